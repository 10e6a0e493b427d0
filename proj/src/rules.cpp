#include "flowca/rules.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

namespace flowca {

Offset offset_of(Direction d) {
    switch (d) {
    case Direction::right: return {1, 0};
    case Direction::left: return {-1, 0};
    case Direction::up: return {0, 1};
    case Direction::down: return {0, -1};
    case Direction::up_left: return {-1, 1};
    case Direction::up_right: return {1, 1};
    case Direction::down_left: return {-1, -1};
    case Direction::down_right: return {1, -1};
    }
    return {};
}

std::string_view to_string(Direction d) {
    switch (d) {
    case Direction::right: return "right";
    case Direction::left: return "left";
    case Direction::up: return "up";
    case Direction::down: return "down";
    case Direction::up_left: return "up-left";
    case Direction::up_right: return "up-right";
    case Direction::down_left: return "down-left";
    case Direction::down_right: return "down-right";
    }
    return "?";
}

Direction parse_direction(std::string_view name) {
    for (const Direction d : all_directions) {
        if (to_string(d) == name) return d;
    }
    throw error(errc::bad_format, "unknown direction '" + std::string(name) + "'");
}

std::string to_string(const Omega& omega) {
    if (omega.is_identity()) return "id";
    return "shift:" + std::string(to_string(*omega.shift));
}

Omega parse_omega(std::string_view name) {
    if (name == "id") return Omega::identity();
    constexpr std::string_view prefix = "shift:";
    if (name.starts_with(prefix)) return Omega::shifted(parse_direction(name.substr(prefix.size())));
    throw error(errc::bad_format, "unknown omega '" + std::string(name) + "'");
}

// --- Condition ---------------------------------------------------------------

Condition::Condition(int arity, std::uint16_t mask) : arity_(arity), mask_(mask) {
    if (arity < 0 || arity > 4) {
        throw error(errc::arity_mismatch, "condition arity must be within 0..4");
    }
    const unsigned patterns = 1u << arity;
    if (patterns < 16 && (mask >> patterns) != 0) {
        throw error(errc::arity_mismatch, "condition mask has patterns beyond its arity");
    }
}

Condition Condition::from_strings(std::span<const std::string> patterns) {
    if (patterns.empty()) throw error(errc::bad_format, "condition must be non-empty");
    const int arity = static_cast<int>(patterns.front().size());
    std::uint16_t mask = 0;
    for (const std::string& p : patterns) {
        if (static_cast<int>(p.size()) != arity) {
            throw error(errc::arity_mismatch, "condition patterns differ in length");
        }
        unsigned v = 0;
        for (const char ch : p) {
            if (ch != '0' && ch != '1') {
                throw error(errc::bad_format, "condition pattern '" + p + "' is not binary");
            }
            v = (v << 1) | (ch == '1' ? 1u : 0u);
        }
        mask = static_cast<std::uint16_t>(mask | (1u << v));
    }
    return Condition(arity, mask);
}

Condition Condition::from_strings(std::initializer_list<std::string_view> patterns) {
    std::vector<std::string> owned(patterns.begin(), patterns.end());
    return from_strings(owned);
}

Condition Condition::full(int arity) {
    const unsigned patterns = 1u << arity;
    return Condition(arity, static_cast<std::uint16_t>(patterns >= 16 ? 0xFFFFu : (1u << patterns) - 1));
}

int Condition::size() const { return std::popcount(mask_); }

std::vector<std::string> Condition::to_strings() const {
    std::vector<std::string> out;
    for (unsigned v = 0; v < (1u << arity_); ++v) {
        if (!contains(v)) continue;
        std::string s(static_cast<std::size_t>(arity_), '0');
        for (int k = 0; k < arity_; ++k) {
            if ((v >> (arity_ - 1 - k)) & 1u) s[static_cast<std::size_t>(k)] = '1';
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Condition> enumerate_conditions(int arity) {
    const std::uint32_t patterns = 1u << arity;
    const std::uint32_t limit = patterns >= 16 ? 0x10000u : (1u << patterns);
    std::vector<Condition> out;
    out.reserve(limit - 1);
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        out.emplace_back(arity, static_cast<std::uint16_t>(mask));
    }
    return out;
}

// --- RuleSpec ----------------------------------------------------------------

RuleSpec RuleSpec::canonical() const {
    RuleSpec out = *this;
    std::sort(out.lambda.begin(), out.lambda.end(), [](const TrafficRule& a, const TrafficRule& b) {
        return std::pair(a.direction, a.shifted) < std::pair(b.direction, b.shifted);
    });
    return out;
}

bool operator==(const RuleSpec& a, const RuleSpec& b) {
    if (a.kind != b.kind || !(a.omega == b.omega) || a.lambda.size() != b.lambda.size()) {
        return false;
    }
    return a.canonical().lambda == b.canonical().lambda;
}

std::string describe(const RuleSpec& spec) {
    std::ostringstream out;
    out << to_string(spec.kind) << " (" << to_string(spec.omega) << ", {";
    const RuleSpec c = spec.canonical();
    for (std::size_t k = 0; k < c.lambda.size(); ++k) {
        const TrafficRule& r = c.lambda[k];
        if (k) out << ", ";
        out << (r.shifted ? "shifted-" : "") << to_string(r.direction) << '{';
        const auto pats = r.condition.to_strings();
        for (std::size_t p = 0; p < pats.size(); ++p) {
            out << (p ? "," : "") << pats[p];
        }
        out << '}';
    }
    out << "})";
    return out.str();
}

std::string_view to_string(Violation::Kind kind) {
    switch (kind) {
    case Violation::Kind::structure: return "structure";
    case Violation::Kind::r1: return "R1";
    case Violation::Kind::r2: return "R2";
    case Violation::Kind::visibility: return "visibility";
    }
    return "?";
}

// --- Geometry ----------------------------------------------------------------

namespace {

std::vector<Offset> shifted_neighborhood(NeighborhoodKind kind, Offset at) {
    std::vector<Offset> out;
    for (const Offset o : neighborhood_offsets(kind)) out.push_back(at + o);
    return out;
}

// Cells seen by both the default landing cell and the redirected landing cell,
// minus the source and the cell that must be empty.
std::vector<Offset> raw_witnesses(NeighborhoodKind kind, Offset shift, Offset step) {
    const auto a = shifted_neighborhood(kind, shift);
    const auto b = shifted_neighborhood(kind, shift + step);
    std::vector<Offset> out;
    for (const Offset o : a) {
        if (o == Offset{} || o == step) continue;
        if (std::find(b.begin(), b.end(), o) != b.end()) out.push_back(o);
    }
    std::sort(out.begin(), out.end(), reading_order_less);
    return out;
}

// Decision cells of a rule fired at `source`, relative to the target cell.
void append_rule_cells(std::vector<Offset>& cells, Offset source, const RuleGeometry& g) {
    cells.push_back(source);
    cells.push_back(source + g.step);
    for (const Offset w : g.witnesses) cells.push_back(source + w);
}

void dedupe(std::vector<Offset>& cells) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
}

// One way a particle can land on the target cell (the origin).
struct Event {
    Offset source;
    int rule; // -1: default move, no rule enabled
    std::vector<Offset> cells;
};

std::vector<Event> landing_events(Offset shift, std::span<const RuleGeometry> rules) {
    std::vector<Event> events;
    Event def{-shift, -1, {}};
    def.cells.push_back(def.source);
    for (const RuleGeometry& g : rules) append_rule_cells(def.cells, def.source, g);
    dedupe(def.cells);
    events.push_back(std::move(def));
    for (std::size_t k = 0; k < rules.size(); ++k) {
        Event e{-rules[k].landing, static_cast<int>(k), {}};
        append_rule_cells(e.cells, e.source, rules[k]);
        dedupe(e.cells);
        events.push_back(std::move(e));
    }
    return events;
}

// Cell assignment over a small window of offsets.
class LocalAssignment {
public:
    static constexpr int radius = 8;
    static constexpr int side = 2 * radius + 1;

    explicit LocalAssignment(std::vector<Offset> cells) : cells_(std::move(cells)) {
        if (cells_.size() > 24) throw error(errc::budget_exceeded, "too many decision cells");
        pos_.fill(-1);
        for (std::size_t k = 0; k < cells_.size(); ++k) pos_[slot(cells_[k])] = static_cast<int>(k);
    }

    std::size_t size() const { return cells_.size(); }
    void assign(std::uint32_t bits) { bits_ = bits; }
    int position(Offset o) const { return pos_[slot(o)]; }

    bool operator()(Offset o) const {
        const int p = pos_[slot(o)];
        return p >= 0 && ((bits_ >> p) & 1u);
    }

    std::vector<std::pair<Offset, bool>> snapshot() const {
        std::vector<std::pair<Offset, bool>> out;
        for (std::size_t k = 0; k < cells_.size(); ++k) out.emplace_back(cells_[k], (bits_ >> k) & 1u);
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return reading_order_less(a.first, b.first); });
        return out;
    }

private:
    static std::size_t slot(Offset o) {
        return static_cast<std::size_t>((o.dj + radius) * side + (o.di + radius));
    }

    std::vector<Offset> cells_;
    std::array<int, side * side> pos_{};
    std::uint32_t bits_ = 0;
};

template <class Cell>
bool event_fires(const Motion& motion, const Event& e, const Cell& cell) {
    const auto rel = [&](Offset o) { return cell(e.source + o); };
    if (e.rule >= 0) return motion.enabled(static_cast<std::size_t>(e.rule), rel);
    if (!rel(Offset{})) return false;
    for (std::size_t k = 0; k < motion.rules().size(); ++k) {
        if (motion.enabled(k, rel)) return false;
    }
    return true;
}

std::string offset_text(Offset o) {
    return "(" + std::to_string(o.di) + "," + std::to_string(o.dj) + ")";
}

bool events_visible(NeighborhoodKind kind, const std::vector<Event>& events, std::string* why) {
    for (const Event& e : events) {
        for (const Offset c : e.cells) {
            if (!in_neighborhood(kind, c)) {
                if (why) {
                    *why = "landing from " + offset_text(e.source) + " depends on cell " +
                           offset_text(c) + " outside the target's neighborhood";
                }
                return false;
            }
        }
    }
    return true;
}

bool parallel(Offset step, Offset shift) {
    return shift != Offset{} && (step == shift || step == -shift);
}

RuleGeometry make_geometry(NeighborhoodKind kind, const Omega& omega, const TrafficRule& r) {
    const Offset shift = r.shifted ? omega.displacement() : Offset{};
    const Offset step = offset_of(r.direction);
    return {step, shift + step, raw_witnesses(kind, shift, step), r.condition};
}

} // namespace

std::vector<Offset> witness_offsets(NeighborhoodKind kind, Direction direction, bool shifted,
                                    const Omega& omega) {
    if (shifted == omega.is_identity()) {
        throw error(errc::inadmissible_direction,
                    shifted ? "shifted traffic needs a shift omega" : "unshifted traffic needs omega = id");
    }
    TrafficRule r{direction, shifted, {}};
    RuleGeometry g = make_geometry(kind, omega, r);
    if (parallel(g.step, omega.displacement())) {
        throw error(errc::inadmissible_direction, "traffic parallel to the shift");
    }
    const std::vector<RuleGeometry> single{g};
    std::string why;
    if (!events_visible(kind, landing_events(omega.displacement(), single), &why)) {
        throw error(errc::inadmissible_direction,
                    std::string(to_string(direction)) + " under " + to_string(omega) + ": " + why);
    }
    return g.witnesses;
}

std::uint64_t condition_count(NeighborhoodKind kind, Direction direction, bool shifted,
                              const Omega& omega) {
    const auto n = witness_offsets(kind, direction, shifted, omega).size();
    return (std::uint64_t{1} << (std::uint64_t{1} << n)) - 1;
}

Motion::Motion(const RuleSpec& spec) : shift_(spec.omega.displacement()) {
    for (const TrafficRule& r : spec.lambda) {
        const auto wit = witness_offsets(spec.kind, r.direction, r.shifted, spec.omega);
        if (static_cast<int>(wit.size()) != r.condition.arity()) {
            throw error(errc::arity_mismatch, "condition arity " + std::to_string(r.condition.arity()) +
                                                  " for " + std::string(to_string(r.direction)) +
                                                  " needs " + std::to_string(wit.size()));
        }
        rules_.push_back(make_geometry(spec.kind, spec.omega, r));
    }
}

// --- Validation --------------------------------------------------------------

std::vector<Violation> validate_spec(const RuleSpec& spec) {
    std::vector<Violation> out;
    using K = Violation::Kind;

    const Offset shift = spec.omega.displacement();
    if (!spec.omega.is_identity() && !in_neighborhood(spec.kind, -shift)) {
        out.push_back({K::visibility, "shift " + to_string(spec.omega) + " is not visible under " +
                                          std::string(to_string(spec.kind)), {}});
        return out;
    }

    std::vector<RuleGeometry> rules;
    for (std::size_t k = 0; k < spec.lambda.size(); ++k) {
        const TrafficRule& r = spec.lambda[k];
        for (std::size_t p = 0; p < k; ++p) {
            if (spec.lambda[p].direction == r.direction && spec.lambda[p].shifted == r.shifted) {
                out.push_back({K::structure, "duplicate rule for " + std::string(to_string(r.direction)), {}});
            }
        }
        if (r.shifted == spec.omega.is_identity()) {
            out.push_back({K::structure, std::string(r.shifted ? "shifted" : "unshifted") + " rule " +
                                             std::string(to_string(r.direction)) + " under omega " +
                                             to_string(spec.omega), {}});
            continue;
        }
        if (r.condition.mask() == 0) {
            out.push_back({K::structure, "empty condition for " + std::string(to_string(r.direction)), {}});
        }
        RuleGeometry g = make_geometry(spec.kind, spec.omega, r);
        if (parallel(g.step, shift)) {
            out.push_back({K::structure, "traffic " + std::string(to_string(r.direction)) +
                                             " is parallel to the shift", {}});
            continue;
        }
        if (static_cast<int>(g.witnesses.size()) != r.condition.arity()) {
            out.push_back({K::structure, "condition arity " + std::to_string(r.condition.arity()) +
                                             " for " + std::string(to_string(r.direction)) + " needs " +
                                             std::to_string(g.witnesses.size()), {}});
            continue;
        }
        rules.push_back(std::move(g));
    }
    if (!out.empty()) return out;

    const auto events = landing_events(shift, rules);
    std::string why;
    if (!events_visible(spec.kind, events, &why)) {
        out.push_back({K::visibility, why, {}});
        return out;
    }

    Motion motion(spec);

    // R1: around any source particle at most one rule is enabled.
    {
        std::vector<Offset> cells{Offset{}};
        for (const RuleGeometry& g : rules) append_rule_cells(cells, Offset{}, g);
        dedupe(cells);
        LocalAssignment local(cells);
        const std::uint32_t origin_bit = 1u << local.position(Offset{});
        for (std::uint32_t bits = 0; bits < (1u << local.size()); ++bits) {
            if (!(bits & origin_bit)) continue;
            local.assign(bits);
            int enabled = 0;
            for (std::size_t k = 0; k < rules.size(); ++k) enabled += motion.enabled(k, local);
            if (enabled > 1) {
                out.push_back({K::r1, "particle at (0,0) enabled by " + std::to_string(enabled) + " rules",
                               local.snapshot()});
                break;
            }
        }
    }

    // R2: no cell receives two particles.
    for (std::size_t a = 0; a < events.size(); ++a) {
        for (std::size_t b = a + 1; b < events.size(); ++b) {
            std::vector<Offset> cells = events[a].cells;
            cells.insert(cells.end(), events[b].cells.begin(), events[b].cells.end());
            dedupe(cells);
            LocalAssignment local(cells);
            for (std::uint32_t bits = 0; bits < (1u << local.size()); ++bits) {
                local.assign(bits);
                if (event_fires(motion, events[a], local) && event_fires(motion, events[b], local)) {
                    out.push_back({K::r2, "cell (0,0) receives particles from " +
                                              offset_text(events[a].source) + " and " +
                                              offset_text(events[b].source),
                                   local.snapshot()});
                    break;
                }
            }
        }
    }
    return out;
}

// --- Compilation -------------------------------------------------------------

Lut compile_spec(const RuleSpec& spec) {
    const auto violations = validate_spec(spec);
    if (!violations.empty()) {
        throw error(errc::invalid_spec, std::string(to_string(violations.front().kind)) + ": " +
                                            violations.front().message);
    }
    const Motion motion(spec);
    const auto events = landing_events(motion.shift(), motion.rules());
    const NeighborhoodKind kind = spec.kind;
    const int m = neighborhood_size(kind);

    Lut lut(kind);
    for (std::uint32_t index = 0; index < lut.size(); ++index) {
        const auto cell = [&](Offset o) {
            const int p = neighborhood_position(kind, o);
            return p >= 0 && ((index >> (m - 1 - p)) & 1u);
        };
        bool filled = false;
        for (const Event& e : events) {
            if (event_fires(motion, e, cell)) {
                filled = true;
                break;
            }
        }
        lut.set(index, filled);
    }
    return lut;
}

// --- Enumeration -------------------------------------------------------------

std::vector<Omega> admissible_omegas(NeighborhoodKind kind) {
    std::vector<Omega> out{Omega::identity()};
    for (const Direction d : all_directions) {
        if (in_neighborhood(kind, -offset_of(d))) out.push_back(Omega::shifted(d));
    }
    return out;
}

std::vector<Direction> admissible_directions(NeighborhoodKind kind, const Omega& omega) {
    std::vector<Direction> out;
    for (const Direction d : all_directions) {
        try {
            witness_offsets(kind, d, !omega.is_identity(), omega);
            out.push_back(d);
        } catch (const error&) {
        }
    }
    return out;
}

std::vector<RuleSpec> enumerate_specs(NeighborhoodKind kind) {
    std::vector<RuleSpec> out;
    for (const Omega& omega : admissible_omegas(kind)) {
        const bool shifted = !omega.is_identity();
        const auto dirs = admissible_directions(kind, omega);
        std::vector<std::vector<Condition>> choices;
        std::uint64_t combos = 1;
        for (const Direction d : dirs) {
            const auto arity = static_cast<int>(witness_offsets(kind, d, shifted, omega).size());
            choices.push_back(enumerate_conditions(arity));
            combos *= choices.back().size() + 1;
            if (combos > (std::uint64_t{1} << 22)) {
                throw error(errc::budget_exceeded, "rule space of " + std::string(to_string(kind)) +
                                                       " is too large to enumerate");
            }
        }
        // Mixed-radix counter; digit 0 means "no rule in this direction".
        std::vector<std::size_t> digit(dirs.size(), 0);
        for (std::uint64_t n = 0; n < combos; ++n) {
            RuleSpec spec{kind, omega, {}};
            for (std::size_t k = 0; k < dirs.size(); ++k) {
                if (digit[k]) spec.lambda.push_back({dirs[k], shifted, choices[k][digit[k] - 1]});
            }
            if (is_valid(spec)) out.push_back(std::move(spec));
            for (std::size_t k = 0; k < digit.size(); ++k) {
                if (++digit[k] <= choices[k].size()) break;
                digit[k] = 0;
            }
        }
    }
    // Empty-lambda specs first, then by omega, then by lambda size.
    const auto omegas = admissible_omegas(kind);
    const auto rank = [&](const Omega& o) {
        return std::find(omegas.begin(), omegas.end(), o) - omegas.begin();
    };
    std::stable_sort(out.begin(), out.end(), [&](const RuleSpec& a, const RuleSpec& b) {
        const bool ea = a.lambda.empty(), eb = b.lambda.empty();
        if (ea != eb) return ea;
        if (rank(a.omega) != rank(b.omega)) return rank(a.omega) < rank(b.omega);
        return a.lambda.size() < b.lambda.size();
    });
    return out;
}

std::vector<RuleSpec> enumerate_specs_2x3() { return enumerate_specs(NeighborhoodKind::rect2x3); }
std::vector<RuleSpec> enumerate_specs_vn() { return enumerate_specs(NeighborhoodKind::von_neumann5); }

// --- Recognition -------------------------------------------------------------

std::variant<RuleSpec, NotRepresentable> recognize_2x3(const Lut& lut) {
    if (lut.kind() != NeighborhoodKind::rect2x3) {
        throw error(errc::wrong_kind, "recognize_2x3 needs a 2x3 table");
    }
    static const std::map<std::uint64_t, RuleSpec> table = [] {
        std::map<std::uint64_t, RuleSpec> t;
        for (RuleSpec& s : enumerate_specs_2x3()) {
            const std::uint64_t key = compile_spec(s).word(0);
            t.emplace(key, std::move(s));
        }
        return t;
    }();
    const auto it = table.find(lut.word(0));
    if (it == table.end()) return NotRepresentable{};
    return it->second;
}

namespace {

struct ProbeSlot {
    Direction direction;
    RuleGeometry geometry;
    std::uint16_t certain = 0;
    std::uint16_t ambiguous = 0;
};

// Evaluates a lut on a sparse assignment of cells around the origin.
class SparseConfig {
public:
    void set(Offset o, bool v) { cells_[o] = v; }
    bool get(Offset o) const {
        const auto it = cells_.find(o);
        return it != cells_.end() && it->second;
    }
    bool next(const Lut& lut, Offset at) const {
        std::uint32_t index = 0;
        for (const Offset o : neighborhood_offsets(lut.kind())) index = (index << 1) | get(at + o);
        return lut[index];
    }

private:
    std::map<Offset, bool> cells_;
};

// Blocker particles can themselves move into a rival's landing cell. The
// control reading compares against the same cells with the particle removed.
std::vector<ProbeSlot> probe_slots(const Lut& lut, const Omega& omega, bool with_control) {
    const NeighborhoodKind kind = lut.kind();
    const bool shifted = !omega.is_identity();
    const Offset shift = omega.displacement();
    std::vector<ProbeSlot> slots;
    for (const Direction d : admissible_directions(kind, omega)) {
        TrafficRule r{d, shifted, Condition::full(static_cast<int>(witness_offsets(kind, d, shifted, omega).size()))};
        slots.push_back({d, make_geometry(kind, omega, r)});
    }
    for (ProbeSlot& slot : slots) {
        const RuleGeometry& g = slot.geometry;
        const auto n = static_cast<unsigned>(g.witnesses.size());
        for (unsigned w = 0; w < (1u << n); ++w) {
            SparseConfig probe;
            probe.set(Offset{}, true);
            probe.set(g.step, false);
            for (unsigned k = 0; k < n; ++k) probe.set(g.witnesses[k], (w >> (n - 1 - k)) & 1u);
            // Block every competing move whose gate cell is free to choose.
            std::vector<const ProbeSlot*> rivals;
            for (const ProbeSlot& other : slots) {
                if (&other == &slot) continue;
                const Offset gate = other.geometry.step;
                const bool is_witness =
                    std::find(g.witnesses.begin(), g.witnesses.end(), gate) != g.witnesses.end();
                if (!is_witness) {
                    if (gate != g.step) probe.set(gate, true);
                } else if (!probe.get(gate)) {
                    rivals.push_back(&other);
                }
            }
            const bool vacated = !probe.next(lut, shift);
            const bool landed = probe.next(lut, g.landing);
            if (!vacated || !landed) continue;
            // Same cells without the particle: fills that persist are not its doing.
            SparseConfig control = probe;
            control.set(Offset{}, false);
            const auto caused = [&](Offset at) { return probe.next(lut, at) && !control.next(lut, at); };
            const auto rival_at = [&](auto&& filled) {
                return std::any_of(rivals.begin(), rivals.end(),
                                   [&](const ProbeSlot* r) { return filled(r->geometry.landing); });
            };
            const bool contested = with_control
                                       ? !caused(g.landing) || rival_at(caused)
                                       : rival_at([&](Offset at) { return probe.next(lut, at); });
            const auto bit = static_cast<std::uint16_t>(1u << w);
            if (contested) {
                slot.ambiguous |= bit;
            } else {
                slot.certain |= bit;
            }
        }
    }
    return slots;
}

} // namespace

// Each probe reading gets `budget` verification attempts.
std::optional<RuleSpec> recognize_by_probe(const Lut& lut, std::uint64_t budget) {
    const NeighborhoodKind kind = lut.kind();
    if (!lut.quiescent()) return std::nullopt;
    for (const bool with_control : {false, true}) {
        std::uint64_t attempts = 0;
        for (const Omega& omega : admissible_omegas(kind)) {
            const auto slots = probe_slots(lut, omega, with_control);
            std::vector<std::pair<std::size_t, unsigned>> open; // (slot, pattern)
            for (std::size_t s = 0; s < slots.size(); ++s) {
                for (unsigned w = 0; w < 16; ++w) {
                    if ((slots[s].ambiguous >> w) & 1u) open.emplace_back(s, w);
                }
            }
            if (open.size() >= 63) continue;
            const std::uint64_t variants = std::uint64_t{1} << open.size();
            for (std::uint64_t v = 0; v < variants && attempts < budget; ++v, ++attempts) {
                RuleSpec spec{kind, omega, {}};
                for (std::size_t s = 0; s < slots.size(); ++s) {
                    std::uint16_t mask = slots[s].certain;
                    for (std::size_t k = 0; k < open.size(); ++k) {
                        if (open[k].first == s && ((v >> k) & 1u)) {
                            mask = static_cast<std::uint16_t>(mask | (1u << open[k].second));
                        }
                    }
                    if (mask == 0) continue;
                    const int arity = static_cast<int>(slots[s].geometry.witnesses.size());
                    spec.lambda.push_back({slots[s].direction, !omega.is_identity(), Condition(arity, mask)});
                }
                if (!is_valid(spec)) continue;
                if (compile_spec(spec) == lut) return spec;
            }
        }
    }
    return std::nullopt;
}

std::variant<RuleSpec, Unknown> recognize_moore(const Lut& lut, std::uint64_t budget) {
    if (lut.kind() != NeighborhoodKind::moore9) {
        throw error(errc::wrong_kind, "recognize_moore needs a Moore table");
    }
    if (auto spec = recognize_by_probe(lut, budget)) return *spec;
    return Unknown{};
}

} // namespace flowca
