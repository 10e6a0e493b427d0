#include <random>

#include "doctest.h"
#include "flowca/lut.hpp"
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

Lut random_lut(std::mt19937_64& rng, NeighborhoodKind kind) {
    Lut lut(kind);
    for (std::uint32_t k = 0; k < lut.size(); ++k) lut.set(k, rng() & 1u);
    return lut;
}

} // namespace

TEST_CASE("pattern_index weights") {
    CHECK(pattern_index(NeighborhoodKind::rect2x3, std::vector<bool>(6, false)) == 0);
    CHECK(pattern_index(NeighborhoodKind::rect2x3, std::vector<bool>{false, true, false, false, false, false}) == 16);
    std::vector<bool> moore(9, false);
    moore[4] = true;
    CHECK(pattern_index(NeighborhoodKind::moore9, moore) == 16);
    const auto offs = neighborhood_offsets(NeighborhoodKind::rect2x3);
    const int weights[] = {32, 16, 8, 4, 2, 1};
    for (int k = 0; k < 6; ++k) {
        std::vector<bool> p(6, false);
        p[static_cast<std::size_t>(neighborhood_position(NeighborhoodKind::rect2x3, offs[k]))] = true;
        CHECK(pattern_index(NeighborhoodKind::rect2x3, p) == static_cast<std::uint32_t>(weights[k]));
    }
    CHECK(throws_code([] { pattern_index(NeighborhoodKind::rect2x3, std::vector<bool>(5, false)); },
                      errc::arity_mismatch));
}

TEST_CASE("lut_eval") {
    const Lut id = decode_hex("FFFF0000FFFF0000", NeighborhoodKind::rect2x3);
    CHECK(lut_eval(id, {false, true, false, false, false, false}));
    CHECK_FALSE(lut_eval(id, std::vector<bool>(6, false)));
    const Lut up = decode_hex("CCCCCCCCCCCCCCCC", NeighborhoodKind::rect2x3);
    CHECK(lut_eval(up, {false, false, false, false, true, false}));
    CHECK(throws_code([&] { lut_eval(up, std::vector<bool>(9, false)); }, errc::arity_mismatch));
}

TEST_CASE("encode_hex") {
    CHECK(encode_hex(projection_lut(NeighborhoodKind::rect2x3, {0, 0})) == "FFFF0000FFFF0000");
    CHECK(encode_hex(projection_lut(NeighborhoodKind::rect2x3, {1, 0})) == "FF00FF00FF00FF00");
    CHECK(encode_hex(Lut(NeighborhoodKind::rect2x3)) == "0000000000000000");
    CHECK(encode_hex(Lut(NeighborhoodKind::moore9)).size() == 128);
    CHECK(encode_hex(Lut(NeighborhoodKind::von_neumann5)).size() == 8);

    Lut top(NeighborhoodKind::rect2x3);
    top.set(63, true);
    CHECK(encode_hex(top) == "8000000000000000");
}

TEST_CASE("decode_hex") {
    CHECK(decode_hex("FFFFFFFF00000000", NeighborhoodKind::rect2x3) == projection_lut(NeighborhoodKind::rect2x3, {-1, 0}));
    CHECK(decode_hex("F0F0F0F0F0F0F0F0", NeighborhoodKind::rect2x3) == projection_lut(NeighborhoodKind::rect2x3, {-1, -1}));
    CHECK(decode_hex(" ffff 0000\nffff0000 ", NeighborhoodKind::rect2x3) == projection_lut(NeighborhoodKind::rect2x3, {0, 0}));
    CHECK(throws_code([] { decode_hex("FFFF0000FFFF000", NeighborhoodKind::rect2x3); }, errc::bad_length));
    CHECK(throws_code([] { decode_hex("FFFF0000FFFF000G", NeighborhoodKind::rect2x3); }, errc::bad_digit));
}

TEST_CASE("the six projection rules pin the bit convention") {
    const std::pair<const char*, Offset> table[] = {
        {"FFFF0000FFFF0000", {0, 0}},  {"FF00FF00FF00FF00", {1, 0}},   {"FFFFFFFF00000000", {-1, 0}},
        {"CCCCCCCCCCCCCCCC", {0, -1}}, {"AAAAAAAAAAAAAAAA", {1, -1}}, {"F0F0F0F0F0F0F0F0", {-1, -1}},
    };
    for (const auto& [hex, o] : table) {
        CAPTURE(hex);
        CHECK(decode_hex(hex, NeighborhoodKind::rect2x3) == projection_lut(NeighborhoodKind::rect2x3, o));
    }
}

TEST_CASE("CA D hex halves and the top-left neighbor") {
    const std::string compact = [] {
        std::string s;
        for (const char ch : ca_d_hex) {
            if (ch != ' ') s.push_back(ch);
        }
        return s;
    }();
    REQUIRE(compact.size() == 128);
    CHECK(compact.substr(0, 64) == compact.substr(64));
    const Lut d = decode_hex(ca_d_hex, NeighborhoodKind::moore9);
    CHECK(encode_hex(d) == compact);
    for (std::uint32_t k = 0; k < 256; ++k) CHECK(d[k] == d[k + 256]);
}

TEST_CASE("property: hex round trip") {
    std::mt19937_64 rng(11);
    for (const auto kind : {NeighborhoodKind::rect2x3, NeighborhoodKind::von_neumann5, NeighborhoodKind::moore9}) {
        for (int n = 0; n < 500; ++n) {
            const Lut lut = random_lut(rng, kind);
            REQUIRE(decode_hex(encode_hex(lut), kind) == lut);
        }
    }
}
