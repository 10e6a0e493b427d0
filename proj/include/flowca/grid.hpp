#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flowca/error.hpp"

namespace flowca {

// Cell coordinate; j grows upward, so (i, j - 1) is directly below (i, j).
struct Coord {
    int i = 0;
    int j = 0;

    friend bool operator==(const Coord&, const Coord&) = default;
    friend auto operator<=>(const Coord&, const Coord&) = default;
};

// Radius-one displacement.
struct Offset {
    int di = 0;
    int dj = 0;

    constexpr Offset operator+(Offset o) const { return {di + o.di, dj + o.dj}; }
    constexpr Offset operator-(Offset o) const { return {di - o.di, dj - o.dj}; }
    constexpr Offset operator-() const { return {-di, -dj}; }
    constexpr int chebyshev() const {
        const int a = di < 0 ? -di : di;
        const int b = dj < 0 ? -dj : dj;
        return a > b ? a : b;
    }

    friend constexpr bool operator==(const Offset&, const Offset&) = default;
    friend constexpr auto operator<=>(const Offset&, const Offset&) = default;
};

inline Coord operator+(Coord c, Offset o) { return {c.i + o.di, c.j + o.dj}; }

// Row-major, top row first, left to right within a row.
constexpr bool reading_order_less(Offset a, Offset b) {
    return a.dj != b.dj ? a.dj > b.dj : a.di < b.di;
}

enum class NeighborhoodKind { moore9, von_neumann5, rect2x3 };

// Canonical ordered offsets; the first offset is the most significant bit of a
// pattern index.
std::span<const Offset> neighborhood_offsets(NeighborhoodKind kind);
int neighborhood_size(NeighborhoodKind kind);
bool in_neighborhood(NeighborhoodKind kind, Offset o);
// Position of `o` in the canonical order, or -1.
int neighborhood_position(NeighborhoodKind kind, Offset o);

std::string_view to_string(NeighborhoodKind kind);
NeighborhoodKind parse_neighborhood(std::string_view name);

// Bit-packed toroidal configuration. Immutable after construction apart from
// the builder-style `set` used by generators and the simulator.
class Configuration {
public:
    Configuration(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    bool get(Coord c) const;
    void set(Coord c, bool v);

    int population() const;

    std::span<const std::uint64_t> row_words(int j) const {
        return {words_.data() + static_cast<std::size_t>(j) * words_per_row_, words_per_row_};
    }

    Coord normalize(Coord c) const;

    friend bool operator==(const Configuration&, const Configuration&) = default;

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * words_per_row_ + static_cast<std::size_t>(i) / 64;
    }

    int width_;
    int height_;
    std::size_t words_per_row_;
    std::vector<std::uint64_t> words_;
};

// rows[0] is the top row (largest j). Each row is a string over {0,1}; spaces
// are ignored.
Configuration make_config(int width, int height, std::span<const std::string> rows);
Configuration make_config(int width, int height, std::initializer_list<std::string_view> rows);

inline bool get_cell(const Configuration& c, Coord at) { return c.get(at); }
inline int population(const Configuration& c) { return c.population(); }

std::vector<bool> neighborhood_pattern(const Configuration& config, Coord center,
                                       NeighborhoodKind kind);

// Translate every cell by (di, dj) on the torus.
Configuration translate(const Configuration& config, Offset by);

// Plain PBM (P1) text codec.
Configuration read_pbm(std::istream& in);
Configuration parse_pbm(std::string_view text);
void write_pbm(std::ostream& out, const Configuration& config);
std::string to_pbm(const Configuration& config);

} // namespace flowca
