#include <random>
#include <sstream>

#include "doctest.h"
#include "flowca/grid.hpp"

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

Configuration random_grid(std::mt19937_64& rng, int w, int h) {
    Configuration c(w, h);
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) c.set({i, j}, rng() & 1u);
    }
    return c;
}

} // namespace

TEST_CASE("make_config builds from top row down") {
    const auto empty = make_config(3, 3, {"000", "000", "000"});
    CHECK(population(empty) == 0);

    // Singleton at (1,2) on a 4x4 grid: j = 2 is the second row from the top.
    const auto single = make_config(4, 4, {"0000", "0100", "0000", "0000"});
    CHECK(population(single) == 1);
    CHECK(get_cell(single, {1, 2}));
    CHECK(get_cell(single, {5, 6}));
    CHECK_FALSE(get_cell(single, {0, 0}));
    CHECK(get_cell(single, {1 - 4, 2 - 8}));
}

TEST_CASE("make_config rejects bad shapes") {
    CHECK(throws_code([] { make_config(2, 3, {"00", "00", "00"}); }, errc::dimension_too_small));
    CHECK(throws_code([] { Configuration(3, 2); }, errc::dimension_too_small));
    CHECK(throws_code([] { make_config(3, 3, {"000", "00", "000"}); }, errc::shape_mismatch));
    CHECK(throws_code([] { make_config(3, 3, {"000", "000"}); }, errc::shape_mismatch));
    CHECK(throws_code([] { make_config(3, 3, {"000", "0000", "000"}); }, errc::shape_mismatch));
}

TEST_CASE("population") {
    Configuration zero(5, 5);
    CHECK(population(zero) == 0);
    Configuration ones(5, 5);
    for (int j = 0; j < 5; ++j) {
        for (int i = 0; i < 5; ++i) ones.set({i, j}, true);
    }
    CHECK(population(ones) == 25);
    const auto checker = make_config(4, 4, {"1010", "0101", "1010", "0101"});
    CHECK(population(checker) == 8);

    // Wide rows span several words.
    Configuration wide(130, 3);
    wide.set({0, 0}, true);
    wide.set({64, 1}, true);
    wide.set({129, 2}, true);
    CHECK(population(wide) == 3);
    CHECK(wide.get({-1, 2}));
}

TEST_CASE("neighborhood offsets") {
    CHECK(neighborhood_size(NeighborhoodKind::rect2x3) == 6);
    CHECK(neighborhood_size(NeighborhoodKind::von_neumann5) == 5);
    CHECK(neighborhood_size(NeighborhoodKind::moore9) == 9);
    for (const auto kind : {NeighborhoodKind::rect2x3, NeighborhoodKind::von_neumann5}) {
        for (const Offset o : neighborhood_offsets(kind)) {
            CHECK(in_neighborhood(NeighborhoodKind::moore9, o));
        }
    }
    for (const auto kind : {NeighborhoodKind::rect2x3, NeighborhoodKind::von_neumann5, NeighborhoodKind::moore9}) {
        const auto offs = neighborhood_offsets(kind);
        for (std::size_t a = 0; a < offs.size(); ++a) {
            CHECK(offs[a].chebyshev() <= 1);
            for (std::size_t b = a + 1; b < offs.size(); ++b) CHECK(offs[a] != offs[b]);
        }
    }
}

TEST_CASE("neighborhood_pattern") {
    Configuration zero(5, 5);
    CHECK(neighborhood_pattern(zero, {3, 1}, NeighborhoodKind::rect2x3) == std::vector<bool>(6, false));

    Configuration single(5, 5);
    single.set({2, 2}, true);
    auto moore = neighborhood_pattern(single, {2, 2}, NeighborhoodKind::moore9);
    std::vector<bool> expect(9, false);
    expect[4] = true;
    CHECK(moore == expect);

    Configuration below(5, 5);
    below.set({2, 1}, true);
    const auto rect = neighborhood_pattern(below, {2, 2}, NeighborhoodKind::rect2x3);
    CHECK(rect == std::vector<bool>{false, false, false, false, true, false});
}

TEST_CASE("property: wrap consistency, pattern = pointwise reads, translation keeps population") {
    std::mt19937_64 rng(7);
    for (int n = 0; n < 1000; ++n) {
        const int w = 3 + static_cast<int>(rng() % 9);
        const int h = 3 + static_cast<int>(rng() % 9);
        const Configuration c = random_grid(rng, w, h);
        const int i = static_cast<int>(rng() % 40) - 20;
        const int j = static_cast<int>(rng() % 40) - 20;
        REQUIRE(c.get({i, j}) == c.get({i + w, j - h}));

        const auto kind = static_cast<NeighborhoodKind>(rng() % 3);
        const auto pattern = neighborhood_pattern(c, {i, j}, kind);
        const auto offs = neighborhood_offsets(kind);
        for (std::size_t k = 0; k < offs.size(); ++k) REQUIRE(pattern[k] == c.get(Coord{i, j} + offs[k]));

        const Offset by{static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 7) - 3};
        REQUIRE(population(translate(c, by)) == population(c));
    }
}

TEST_CASE("PBM codec") {
    const auto c = make_config(4, 3, {"1000", "0110", "0001"});
    const std::string text = to_pbm(c);
    CHECK(text == "P1\n4 3\n1000\n0110\n0001\n");
    CHECK(parse_pbm(text) == c);
    CHECK(parse_pbm("P1\n# comment\n4 3\n1 0 0 0\n0 1 1 0\n0 0 0 1\n") == c);
    CHECK(get_cell(parse_pbm(text), {0, 2}));

    CHECK(throws_code([] { parse_pbm("P4\n3 3\n000\n000\n000\n"); }, errc::bad_format));
    CHECK(throws_code([] { parse_pbm("P1\n3 3\n000\n000\n"); }, errc::shape_mismatch));
    CHECK(throws_code([] { parse_pbm("P1\n3 3\n000\n020\n000\n"); }, errc::bad_format));
    CHECK(throws_code([] { parse_pbm("P1\n2 3\n00\n00\n00\n"); }, errc::dimension_too_small));
}
