#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "flowca/grid.hpp"
#include "flowca/lut.hpp"

namespace flowca {

// A finite configuration whose population changes in one step.
struct ConservationWitness {
    Configuration config;
    int before = 0;
    int after = 0;
};

struct NcVerdict {
    bool conserving = false;
    std::optional<ConservationWitness> witness;
    std::string method;
};

// 2x3 patterns are 6-bit values x y z t u w (MSB first): the row
// (i-1,j) (i,j) (i+1,j) followed by (i-1,j-1) (i,j-1) (i+1,j-1).
inline constexpr unsigned pattern6(unsigned x, unsigned y, unsigned z, unsigned t, unsigned u,
                                   unsigned w) {
    return (x << 5) | (y << 4) | (z << 3) | (t << 2) | (u << 1) | w;
}

// The 20 free table values that determine the right-hand side of the
// conservation identity: f(0,y,z,0,u,w) and f(0,0,0,t,u,w), sharing the four
// values f(0,0,0,0,u,w).
class PartialAssignment2x3 {
public:
    static constexpr std::uint32_t count = std::uint32_t{1} << 20;

    // Low 8 bits: column values over (t,u,w). High 12 bits: block values over
    // (y,z,u,w) with (y,z) != (0,0).
    explicit PartialAssignment2x3(std::uint32_t code);
    static PartialAssignment2x3 from_lut(const Lut& lut);

    std::uint32_t code() const { return code_; }
    std::uint16_t block_values() const;   // indexed by y z u w
    std::uint8_t column_values() const;   // indexed by t u w

    static bool covers(unsigned pattern);
    // Only for covered patterns.
    unsigned value(unsigned pattern) const;

private:
    std::uint32_t code_;
};

// Exact right-hand side of the identity for one pattern.
int durand_rhs(const PartialAssignment2x3& a, unsigned pattern);

NcVerdict durand_check_2x3(const Lut& lut);

// Scans all 2^20 partial assignments; result sorted by hex.
std::vector<Lut> enumerate_nc_2x3(int threads = 1);

inline constexpr std::uint64_t default_oracle_budget = std::uint64_t{1} << 24;

// Necessary-condition oracle: every configuration supported inside a
// window_w x window_h window, on a zero torus two cells wider on each side.
NcVerdict finite_support_check(const Lut& lut, int window_w, int window_h,
                               std::uint64_t budget = default_oracle_budget, int threads = 1);

struct Exhaustive {};
struct RandomSamples {
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};
using TorusMode = std::variant<Exhaustive, RandomSamples>;

// Necessary-condition oracle on a width x height torus.
NcVerdict torus_check(const Lut& lut, int width, int height, TorusMode mode,
                      std::uint64_t budget = default_oracle_budget, int threads = 1);

} // namespace flowca
