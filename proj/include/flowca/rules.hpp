#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "flowca/grid.hpp"
#include "flowca/lut.hpp"

namespace flowca {

enum class Direction { right, left, up, down, up_left, up_right, down_left, down_right };

inline constexpr std::array<Direction, 8> all_directions{
    Direction::left,    Direction::right,     Direction::up,        Direction::down,
    Direction::up_left, Direction::up_right,  Direction::down_left, Direction::down_right,
};

Offset offset_of(Direction d);
std::string_view to_string(Direction d);
Direction parse_direction(std::string_view name);

// Overarching motion: identity, or a uniform shift.
struct Omega {
    std::optional<Direction> shift;

    static Omega identity() { return {}; }
    static Omega shifted(Direction d) { return {d}; }

    bool is_identity() const { return !shift.has_value(); }
    Offset displacement() const { return shift ? offset_of(*shift) : Offset{}; }

    friend bool operator==(const Omega&, const Omega&) = default;
};

std::string to_string(const Omega& omega);
Omega parse_omega(std::string_view name);

// Non-empty set of witness patterns, stored as a bitmask over pattern values.
// Pattern value of a string "b0 b1 ... b(n-1)" is sum b_k 2^(n-1-k).
class Condition {
public:
    Condition() = default;
    Condition(int arity, std::uint16_t mask);

    static Condition from_strings(std::span<const std::string> patterns);
    static Condition from_strings(std::initializer_list<std::string_view> patterns);
    static Condition full(int arity);

    int arity() const { return arity_; }
    std::uint16_t mask() const { return mask_; }
    bool contains(unsigned pattern) const { return (mask_ >> pattern) & 1u; }
    int size() const;
    std::vector<std::string> to_strings() const;

    friend bool operator==(const Condition&, const Condition&) = default;
    friend auto operator<=>(const Condition&, const Condition&) = default;

private:
    int arity_ = 0;
    std::uint16_t mask_ = 0;
};

// Every non-empty condition of the given witness arity, in mask order.
std::vector<Condition> enumerate_conditions(int arity);

struct TrafficRule {
    Direction direction = Direction::right;
    bool shifted = false;
    Condition condition;

    friend bool operator==(const TrafficRule&, const TrafficRule&) = default;
};

struct RuleSpec {
    NeighborhoodKind kind = NeighborhoodKind::moore9;
    Omega omega;
    std::vector<TrafficRule> lambda;

    // Lambda sorted by (direction, shifted); equality treats lambda as a set.
    RuleSpec canonical() const;
    friend bool operator==(const RuleSpec& a, const RuleSpec& b);
};

std::string describe(const RuleSpec& spec);

// Witness cells of a traffic move, relative to the source particle, in reading
// order. Throws inadmissible_direction when the move cannot be decided from
// the neighborhoods involved.
std::vector<Offset> witness_offsets(NeighborhoodKind kind, Direction direction, bool shifted,
                                    const Omega& omega);

// Number of non-empty conditions available to that traffic rule.
std::uint64_t condition_count(NeighborhoodKind kind, Direction direction, bool shifted,
                              const Omega& omega);

struct Violation {
    enum class Kind { structure, r1, r2, visibility };

    Kind kind;
    std::string message;
    // Concrete cell assignment exhibiting the violation (relative offsets).
    std::vector<std::pair<Offset, bool>> pattern;
};

std::string_view to_string(Violation::Kind kind);

// Empty result means the spec is valid.
std::vector<Violation> validate_spec(const RuleSpec& spec);
inline bool is_valid(const RuleSpec& spec) { return validate_spec(spec).empty(); }

// Geometry of one traffic rule relative to its source particle.
struct RuleGeometry {
    Offset step;       // cell that must be empty
    Offset landing;    // where the particle lands when the rule fires
    std::vector<Offset> witnesses;
    Condition condition;
};

// Particle-level reading of a spec. Resolves the move of a single particle
// from the cells around it.
class Motion {
public:
    // Requires a structurally sound spec (admissible directions, matching
    // arities); full validity is checked by validate_spec.
    explicit Motion(const RuleSpec& spec);

    Offset shift() const { return shift_; }
    std::span<const RuleGeometry> rules() const { return rules_; }

    // `cell(Offset)` reads the state relative to the source particle.
    template <class Cell>
    bool enabled(std::size_t k, Cell&& cell) const {
        const RuleGeometry& g = rules_[k];
        if (!cell(Offset{}) || cell(g.step)) return false;
        unsigned w = 0;
        for (const Offset o : g.witnesses) {
            w = (w << 1) | (cell(o) ? 1u : 0u);
        }
        return g.condition.contains(w);
    }

    // Landing offset of the particle at the origin (which must be occupied).
    // With R1 in force at most one rule is enabled.
    template <class Cell>
    Offset resolve(Cell&& cell) const {
        for (std::size_t k = 0; k < rules_.size(); ++k) {
            if (enabled(k, cell)) return rules_[k].landing;
        }
        return shift_;
    }

private:
    Offset shift_;
    std::vector<RuleGeometry> rules_;
};

Lut compile_spec(const RuleSpec& spec);

// Omegas whose default move is visible under `kind`, identity first.
std::vector<Omega> admissible_omegas(NeighborhoodKind kind);
// Directions admitting a traffic rule under `omega`.
std::vector<Direction> admissible_directions(NeighborhoodKind kind, const Omega& omega);

// All valid specs reachable by choosing, for every admissible omega, at most
// one condition per admissible direction. Only tractable for small kinds.
std::vector<RuleSpec> enumerate_specs(NeighborhoodKind kind);
std::vector<RuleSpec> enumerate_specs_2x3();
std::vector<RuleSpec> enumerate_specs_vn();

struct NotRepresentable {};
struct Unknown {};

std::variant<RuleSpec, NotRepresentable> recognize_2x3(const Lut& lut);
// Best effort; a returned spec always compiles back to `lut`.
std::variant<RuleSpec, Unknown> recognize_moore(const Lut& lut, std::uint64_t budget);
// Same probe for any kind.
std::optional<RuleSpec> recognize_by_probe(const Lut& lut, std::uint64_t budget);

} // namespace flowca
