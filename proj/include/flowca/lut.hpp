#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "flowca/grid.hpp"

namespace flowca {

// Output table of a radius-one local rule: 2^m bits for an m-cell neighborhood.
class Lut {
public:
    explicit Lut(NeighborhoodKind kind) : kind_(kind) {}

    NeighborhoodKind kind() const { return kind_; }
    int arity() const { return neighborhood_size(kind_); }
    std::uint32_t size() const { return std::uint32_t{1} << arity(); }

    bool operator[](std::uint32_t index) const { return (words_[index / 64] >> (index % 64)) & 1u; }
    void set(std::uint32_t index, bool v) {
        const std::uint64_t bit = std::uint64_t{1} << (index % 64);
        words_[index / 64] = v ? (words_[index / 64] | bit) : (words_[index / 64] & ~bit);
    }

    bool quiescent() const { return !(*this)[0]; }

    // Low word holds indices 0..63; enough for the whole 2x3 table.
    std::uint64_t word(std::size_t k) const { return words_[k]; }

    friend bool operator==(const Lut&, const Lut&) = default;
    friend auto operator<=>(const Lut&, const Lut&) = default;

private:
    NeighborhoodKind kind_;
    std::array<std::uint64_t, 8> words_{};
};

// The first offset in canonical order is the most significant bit.
std::uint32_t pattern_index(NeighborhoodKind kind, std::span<const bool> pattern);
std::uint32_t pattern_index(NeighborhoodKind kind, const std::vector<bool>& pattern);

bool lut_eval(const Lut& lut, const std::vector<bool>& pattern);

// Upper-case hex, most significant table index first, no separators.
std::string encode_hex(const Lut& lut);
// Whitespace and case tolerant.
Lut decode_hex(std::string_view text, NeighborhoodKind kind);

// Lut for f(pattern) = state at `o`.
Lut projection_lut(NeighborhoodKind kind, Offset o);

} // namespace flowca
