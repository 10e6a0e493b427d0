#include <random>
#include <set>

#include "doctest.h"
#include "flowca/conservation.hpp"
#include "flowca/rules.hpp"
#include "flowca/simulator.hpp"
#include "golden_tables.hpp"

using namespace flowca;

namespace {

bool throws_code(auto&& fn, errc code) {
    try {
        fn();
    } catch (const error& e) {
        return e.code() == code;
    }
    return false;
}

Lut from_patterns(std::initializer_list<unsigned> ones) {
    Lut lut(NeighborhoodKind::rect2x3);
    for (const unsigned p : ones) lut.set(p, true);
    return lut;
}

Lut mirror_2x3(const Lut& lut) {
    Lut out(NeighborhoodKind::rect2x3);
    for (unsigned p = 0; p < 64; ++p) {
        const unsigned x = p >> 5 & 1, y = p >> 4 & 1, z = p >> 3 & 1, t = p >> 2 & 1, u = p >> 1 & 1, w = p & 1;
        out.set(p, lut[pattern6(z, y, x, w, u, t)]);
    }
    return out;
}

// A witness must really change the population in one step.
void check_witness(const Lut& lut, const NcVerdict& v) {
    REQUIRE_FALSE(v.conserving);
    REQUIRE(v.witness.has_value());
    const auto& w = *v.witness;
    CHECK(w.before == population(w.config));
    CHECK(w.after == population(step(w.config, lut)));
    CHECK(w.before != w.after);
}

} // namespace

TEST_CASE("pattern6 and partial assignments") {
    CHECK(pattern6(0, 1, 0, 0, 0, 0) == 16);
    CHECK(pattern6(1, 1, 1, 1, 1, 1) == 63);
    CHECK(PartialAssignment2x3::count == 1u << 20);
    CHECK(PartialAssignment2x3::covers(pattern6(0, 0, 0, 1, 0, 1)));
    CHECK(PartialAssignment2x3::covers(pattern6(0, 1, 1, 0, 0, 1)));
    CHECK_FALSE(PartialAssignment2x3::covers(pattern6(1, 0, 0, 0, 0, 0)));
    CHECK_FALSE(PartialAssignment2x3::covers(pattern6(0, 1, 0, 1, 0, 0)));

    std::mt19937_64 rng(3);
    for (int n = 0; n < 200; ++n) {
        Lut lut(NeighborhoodKind::rect2x3);
        for (unsigned p = 0; p < 64; ++p) lut.set(p, rng() & 1u);
        const auto a = PartialAssignment2x3::from_lut(lut);
        for (unsigned p = 0; p < 64; ++p) {
            if (PartialAssignment2x3::covers(p)) REQUIRE(a.value(p) == static_cast<unsigned>(lut[p]));
        }
        REQUIRE(PartialAssignment2x3(a.code()).code() == a.code());
    }
}

TEST_CASE("durand right-hand side fixtures") {
    // Values from an independent evaluation of the identity.
    CHECK(durand_rhs(PartialAssignment2x3::from_lut(Lut(NeighborhoodKind::rect2x3)), pattern6(1, 0, 1, 1, 0, 1)) == 1);
    CHECK(durand_rhs(PartialAssignment2x3::from_lut(from_patterns({0})), pattern6(1, 0, 1, 1, 0, 1)) == 2);
    CHECK(durand_rhs(PartialAssignment2x3::from_lut(from_patterns({1})), pattern6(1, 0, 1, 0, 1, 0)) == 2);

    // For a conserving table the identity reproduces every entry.
    const Lut id = decode_hex("FFFF0000FFFF0000", NeighborhoodKind::rect2x3);
    const auto a = PartialAssignment2x3::from_lut(id);
    for (unsigned p = 0; p < 64; ++p) CHECK(durand_rhs(a, p) == static_cast<int>(id[p]));
}

TEST_CASE("durand_check_2x3") {
    for (const auto& row : golden_2x3_rows()) {
        const Lut lut = decode_hex(expected_hex(row), NeighborhoodKind::rect2x3);
        const auto v = durand_check_2x3(lut);
        CHECK(v.conserving);
        CHECK(v.method == "exact-2x3");
    }
    const Lut misprint = decode_hex(misprinted_hex, NeighborhoodKind::rect2x3);
    check_witness(misprint, durand_check_2x3(misprint));
    const Lut not_quiescent = from_patterns({0});
    check_witness(not_quiescent, durand_check_2x3(not_quiescent));
    const Lut annihilate(NeighborhoodKind::rect2x3);
    check_witness(annihilate, durand_check_2x3(annihilate));
    CHECK(throws_code([] { durand_check_2x3(Lut(NeighborhoodKind::moore9)); }, errc::wrong_kind));
}

TEST_CASE("property: witnesses are sound") {
    std::mt19937_64 rng(21);
    for (int n = 0; n < 300; ++n) {
        Lut lut(NeighborhoodKind::rect2x3);
        for (unsigned p = 0; p < 64; ++p) lut.set(p, rng() & 1u);
        const auto exact = durand_check_2x3(lut);
        if (!exact.conserving) check_witness(lut, exact);
        const auto finite = finite_support_check(lut, 2, 3);
        if (!finite.conserving) check_witness(lut, finite);
        const auto torus = torus_check(lut, 4, 4, Exhaustive{});
        if (!torus.conserving) check_witness(lut, torus);
        CHECK(exact.conserving == finite.conserving);
    }
    std::mt19937_64 mrng(22);
    for (int n = 0; n < 20; ++n) {
        Lut lut(NeighborhoodKind::moore9);
        for (unsigned p = 1; p < 512; ++p) lut.set(p, mrng() & 1u);
        const auto torus = torus_check(lut, 32, 32, RandomSamples{50, 1});
        if (!torus.conserving) check_witness(lut, torus);
        const auto finite = finite_support_check(lut, 3, 3);
        if (!finite.conserving) check_witness(lut, finite);
    }
}

TEST_CASE("scan equals the compiled rule classes") {
    std::set<Lut> compiled;
    for (const auto& s : enumerate_specs_2x3()) compiled.insert(compile_spec(s));
    const auto scan = enumerate_nc_2x3(1);
    CHECK(std::set<Lut>(scan.begin(), scan.end()) == compiled);
    CHECK(enumerate_nc_2x3(4) == scan);
    for (std::size_t k = 1; k < scan.size(); ++k) CHECK(encode_hex(scan[k - 1]) < encode_hex(scan[k]));
}

TEST_CASE("property: mirror of a conserving 2x3 table conserves") {
    const auto conserving = enumerate_nc_2x3(4);
    std::set<std::string> hexes;
    for (const Lut& lut : conserving) hexes.insert(encode_hex(lut));
    for (const Lut& lut : conserving) {
        const Lut m = mirror_2x3(lut);
        CHECK(hexes.count(encode_hex(m)) == 1);
        CHECK(durand_check_2x3(m).conserving);
        CHECK(torus_check(m, 4, 4, Exhaustive{}).conserving);
    }
}

TEST_CASE("oracle limits and determinism") {
    const Lut id = decode_hex("FFFF0000FFFF0000", NeighborhoodKind::rect2x3);
    CHECK(throws_code([&] { finite_support_check(id, 5, 5, 1u << 20); }, errc::window_too_large));
    CHECK(throws_code([&] { torus_check(id, 5, 5, Exhaustive{}); }, errc::budget_exceeded));
    CHECK(throws_code([&] { torus_check(id, 8, 8, RandomSamples{100, 0}, 10); }, errc::budget_exceeded));

    Lut bad = id;
    bad.set(pattern6(1, 0, 1, 1, 0, 1), true);
    const auto one = torus_check(bad, 4, 4, Exhaustive{}, default_oracle_budget, 1);
    const auto many = torus_check(bad, 4, 4, Exhaustive{}, default_oracle_budget, 4);
    REQUIRE(one.witness.has_value());
    REQUIRE(many.witness.has_value());
    CHECK(one.witness->config == many.witness->config);
    const auto r1 = torus_check(bad, 16, 16, RandomSamples{200, 9}, default_oracle_budget, 1);
    const auto r4 = torus_check(bad, 16, 16, RandomSamples{200, 9}, default_oracle_budget, 4);
    REQUIRE(r1.witness.has_value());
    REQUIRE(r4.witness.has_value());
    CHECK(r1.witness->config == r4.witness->config);
}

TEST_CASE("oracle examples") {
    const Lut ones = decode_hex("FFFFFFFFFFFFFFFF", NeighborhoodKind::rect2x3);
    const auto v = durand_check_2x3(ones);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->config == Configuration(7, 7));
    CHECK(v.witness->before == 0);
    CHECK(v.witness->after == 49);
    // Listed as conserving but misprinted; the table built from its rule conserves.
    CHECK_FALSE(durand_check_2x3(decode_hex("FFFF8B033F2E8800", NeighborhoodKind::rect2x3)).conserving);
    CHECK(durand_check_2x3(decode_hex("FFEE8B033F2E8800", NeighborhoodKind::rect2x3)).conserving);

    const Lut moore_id = projection_lut(NeighborhoodKind::moore9, {0, 0});
    CHECK(finite_support_check(moore_id, 3, 3).conserving);
    const Lut ca_d = decode_hex(ca_d_hex, NeighborhoodKind::moore9);
    CHECK(finite_support_check(ca_d, 4, 4, default_oracle_budget, 4).conserving);

    Lut dup(NeighborhoodKind::moore9);
    for (std::uint32_t k = 0; k < 512; ++k) {
        dup.set(k, moore_id[k] || projection_lut(NeighborhoodKind::moore9, {1, 0})[k]);
    }
    const auto dv = finite_support_check(dup, 2, 1);
    check_witness(dup, dv);
    CHECK(dv.witness->before == 1);
    CHECK(dv.witness->after == 2);

    CHECK(torus_check(ca_d, 6, 6, RandomSamples{100000, 42}, default_oracle_budget, 4).conserving);
    CHECK(torus_check(decode_hex("FF00FF00FF00FF00", NeighborhoodKind::rect2x3), 4, 4, Exhaustive{}).conserving);
    for (const Lut& lut : enumerate_nc_2x3(4)) {
        CHECK(lut.quiescent());
        CHECK(torus_check(lut, 4, 4, Exhaustive{}, default_oracle_budget, 4).conserving);
    }
}
