#include "flowca/lut.hpp"

#include <cctype>

namespace flowca {

std::uint32_t pattern_index(NeighborhoodKind kind, std::span<const bool> pattern) {
    const int m = neighborhood_size(kind);
    if (static_cast<int>(pattern.size()) != m) {
        throw error(errc::arity_mismatch, "pattern has " + std::to_string(pattern.size()) +
                                              " cells, neighborhood has " + std::to_string(m));
    }
    std::uint32_t index = 0;
    for (const bool b : pattern) {
        index = (index << 1) | (b ? 1u : 0u);
    }
    return index;
}

std::uint32_t pattern_index(NeighborhoodKind kind, const std::vector<bool>& pattern) {
    const int m = neighborhood_size(kind);
    if (static_cast<int>(pattern.size()) != m) {
        throw error(errc::arity_mismatch, "pattern has " + std::to_string(pattern.size()) +
                                              " cells, neighborhood has " + std::to_string(m));
    }
    std::uint32_t index = 0;
    for (const bool b : pattern) {
        index = (index << 1) | (b ? 1u : 0u);
    }
    return index;
}

bool lut_eval(const Lut& lut, const std::vector<bool>& pattern) {
    return lut[pattern_index(lut.kind(), pattern)];
}

std::string encode_hex(const Lut& lut) {
    static constexpr char digits[] = "0123456789ABCDEF";
    const std::uint32_t n = lut.size();
    std::string out;
    out.reserve(n / 4);
    for (std::uint32_t top = n; top >= 4; top -= 4) {
        unsigned nibble = 0;
        for (std::uint32_t k = top; k > top - 4; --k) {
            nibble = (nibble << 1) | (lut[k - 1] ? 1u : 0u);
        }
        out.push_back(digits[nibble]);
    }
    return out;
}

Lut decode_hex(std::string_view text, NeighborhoodKind kind) {
    Lut lut(kind);
    std::string clean;
    for (const char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        clean.push_back(ch);
    }
    const std::size_t expected = lut.size() / 4;
    if (clean.size() != expected) {
        throw error(errc::bad_length, "expected " + std::to_string(expected) +
                                          " hex digits, got " + std::to_string(clean.size()));
    }
    for (std::size_t p = 0; p < clean.size(); ++p) {
        const char ch = static_cast<char>(std::toupper(static_cast<unsigned char>(clean[p])));
        unsigned v;
        if (ch >= '0' && ch <= '9') {
            v = static_cast<unsigned>(ch - '0');
        } else if (ch >= 'A' && ch <= 'F') {
            v = static_cast<unsigned>(ch - 'A' + 10);
        } else {
            throw error(errc::bad_digit, std::string("invalid hex digit '") + clean[p] + "'");
        }
        // Digit p covers indices top-1 .. top-4 with top = size - 4p.
        const std::uint32_t top = lut.size() - 4 * static_cast<std::uint32_t>(p);
        for (int b = 0; b < 4; ++b) {
            lut.set(top - 4 + static_cast<std::uint32_t>(b), (v >> b) & 1u);
        }
    }
    return lut;
}

Lut projection_lut(NeighborhoodKind kind, Offset o) {
    const int pos = neighborhood_position(kind, o);
    if (pos < 0) throw error(errc::wrong_kind, "offset outside neighborhood");
    const int m = neighborhood_size(kind);
    const std::uint32_t weight = std::uint32_t{1} << (m - 1 - pos);
    Lut lut(kind);
    for (std::uint32_t k = 0; k < lut.size(); ++k) {
        lut.set(k, (k & weight) != 0);
    }
    return lut;
}

} // namespace flowca
