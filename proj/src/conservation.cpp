#include "flowca/conservation.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <set>
#include <thread>

#include "flowca/simulator.hpp"

namespace flowca {

namespace {

// Runs fn(begin, end) over [0, n) split into contiguous chunks.
template <class Fn>
void parallel_chunks(std::uint64_t n, int threads, Fn&& fn) {
    const std::uint64_t t = static_cast<std::uint64_t>(std::max(1, threads));
    if (t == 1 || n < 1024) {
        fn(std::uint64_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (n + t - 1) / t;
    for (std::uint64_t k = 0; k < t; ++k) {
        const std::uint64_t b = k * chunk;
        const std::uint64_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e] { fn(b, e); });
    }
    for (auto& th : pool) th.join();
}

unsigned bit(unsigned pattern, int k) { return (pattern >> (5 - k)) & 1u; }

// RHS of the identity given any table-like accessor f(pattern).
template <class F>
int rhs(const F& f, unsigned p) {
    const unsigned x = bit(p, 0), y = bit(p, 1), z = bit(p, 2);
    const unsigned t = bit(p, 3), u = bit(p, 4), w = bit(p, 5);
    const auto v = [&](unsigned q) { return static_cast<int>(f(q)); };
    return static_cast<int>(x)
         + (v(pattern6(0, y, z, 0, u, w)) - v(pattern6(0, x, y, 0, t, u)))
         + (v(pattern6(0, 0, y, 0, 0, u)) - v(pattern6(0, 0, x, 0, 0, t)))
         + (v(pattern6(0, 0, 0, t, u, w)) - v(pattern6(0, 0, 0, x, y, z)))
         + (v(pattern6(0, 0, 0, 0, y, z)) - v(pattern6(0, 0, 0, 0, x, y)))
         + (v(pattern6(0, 0, 0, 0, t, u)) - v(pattern6(0, 0, 0, 0, u, w)))
         + (v(pattern6(0, 0, 0, 0, 0, y)) - v(pattern6(0, 0, 0, 0, 0, x)))
         + (v(pattern6(0, 0, 0, 0, 0, t)) - v(pattern6(0, 0, 0, 0, 0, u)));
}

int population_change(const Lut& lut, const Configuration& c, int& after) {
    after = population(step(c, lut));
    return after - population(c);
}

NcVerdict non_quiescent_verdict(const Lut& lut, int w, int h, std::string method) {
    Configuration empty(w, h);
    const int after = population(step(empty, lut));
    return {false, ConservationWitness{empty, 0, after}, std::move(method)};
}

} // namespace

// --- Partial assignment ------------------------------------------------------

PartialAssignment2x3::PartialAssignment2x3(std::uint32_t code) : code_(code) {
    if (code >= count) throw error(errc::bad_format, "partial assignment code exceeds 20 bits");
}

std::uint8_t PartialAssignment2x3::column_values() const { return static_cast<std::uint8_t>(code_ & 0xFFu); }

std::uint16_t PartialAssignment2x3::block_values() const {
    // Block entries with y = z = 0 are the column entries with t = 0.
    const std::uint32_t high = code_ >> 8;
    return static_cast<std::uint16_t>((high << 4) | (column_values() & 0x0Fu));
}

bool PartialAssignment2x3::covers(unsigned pattern) {
    const bool block = bit(pattern, 0) == 0 && bit(pattern, 3) == 0;
    const bool column = (pattern >> 3) == 0;
    return block || column;
}

unsigned PartialAssignment2x3::value(unsigned pattern) const {
    if ((pattern >> 3) == 0) return (column_values() >> (pattern & 7u)) & 1u;
    if (bit(pattern, 0) == 0 && bit(pattern, 3) == 0) {
        const unsigned idx = (bit(pattern, 1) << 3) | (bit(pattern, 2) << 2) | (pattern & 3u);
        return (block_values() >> idx) & 1u;
    }
    throw error(errc::bad_format, "pattern is not one of the free values");
}

PartialAssignment2x3 PartialAssignment2x3::from_lut(const Lut& lut) {
    if (lut.kind() != NeighborhoodKind::rect2x3) throw error(errc::wrong_kind, "needs a 2x3 table");
    std::uint32_t code = 0;
    for (unsigned tuw = 0; tuw < 8; ++tuw) code |= static_cast<std::uint32_t>(lut[tuw]) << tuw;
    for (unsigned yzuw = 4; yzuw < 16; ++yzuw) {
        const unsigned p = pattern6(0, (yzuw >> 3) & 1u, (yzuw >> 2) & 1u, 0, (yzuw >> 1) & 1u, yzuw & 1u);
        code |= static_cast<std::uint32_t>(lut[p]) << (8 + yzuw - 4);
    }
    return PartialAssignment2x3(code);
}

int durand_rhs(const PartialAssignment2x3& a, unsigned pattern) {
    return rhs([&](unsigned q) { return a.value(q); }, pattern);
}

// --- Exact check -------------------------------------------------------------

NcVerdict durand_check_2x3(const Lut& lut) {
    if (lut.kind() != NeighborhoodKind::rect2x3) throw error(errc::wrong_kind, "needs a 2x3 table");
    const std::string method = "exact-2x3";
    if (!lut.quiescent()) return non_quiescent_verdict(lut, 7, 7, method);

    const auto f = [&](unsigned q) { return lut[q]; };
    std::optional<unsigned> failing;
    for (unsigned p = 0; p < 64; ++p) {
        if (rhs(f, p) != static_cast<int>(lut[p])) {
            failing = p;
            break;
        }
    }
    if (!failing) return {true, std::nullopt, method};

    // Embed the failing block in a zero background.
    Configuration c(7, 7);
    for (int k = 0; k < 3; ++k) {
        c.set({2 + k, 3}, bit(*failing, k));
        c.set({2 + k, 2}, bit(*failing, 3 + k));
    }
    int after = 0;
    if (population_change(lut, c, after) != 0) {
        return {false, ConservationWitness{c, population(c), after}, method};
    }
    const std::pair<int, int> windows[] = {{3, 2}, {3, 3}, {4, 3}, {4, 4}, {5, 4}};
    for (const auto& [ww, wh] : windows) {
        NcVerdict v = finite_support_check(lut, ww, wh);
        if (!v.conserving) {
            v.method = method;
            return v;
        }
    }
    return {false, std::nullopt, method};
}

std::vector<Lut> enumerate_nc_2x3(int threads) {
    std::vector<std::set<std::uint64_t>> found(static_cast<std::size_t>(std::max(1, threads)));
    std::atomic<std::size_t> next_slot{0};

    parallel_chunks(PartialAssignment2x3::count, threads, [&](std::uint64_t b, std::uint64_t e) {
        std::set<std::uint64_t>& out = found[next_slot++];
        std::array<std::uint8_t, 64> table{};
        for (std::uint64_t code = b; code < e; ++code) {
            const PartialAssignment2x3 a(static_cast<std::uint32_t>(code));
            // Only 20 table entries are referenced; materialize them once.
            for (unsigned p = 0; p < 64; ++p) {
                table[p] = PartialAssignment2x3::covers(p) ? static_cast<std::uint8_t>(a.value(p)) : 0;
            }
            const auto f = [&](unsigned q) { return table[q]; };
            std::uint64_t bits = 0;
            bool ok = true;
            for (unsigned p = 0; p < 64 && ok; ++p) {
                const int v = rhs(f, p);
                if (v != 0 && v != 1) {
                    ok = false;
                } else if (v == 1) {
                    bits |= std::uint64_t{1} << p;
                }
            }
            if (!ok) continue;
            Lut lut(NeighborhoodKind::rect2x3);
            for (unsigned p = 0; p < 64; ++p) lut.set(p, (bits >> p) & 1u);
            // The completed table must reproduce its own free values.
            if (durand_check_2x3(lut).conserving) out.insert(bits);
        }
    });

    std::set<std::uint64_t> all;
    for (const auto& s : found) all.insert(s.begin(), s.end());
    std::vector<Lut> out;
    for (const std::uint64_t bits : all) {
        Lut lut(NeighborhoodKind::rect2x3);
        for (unsigned p = 0; p < 64; ++p) lut.set(p, (bits >> p) & 1u);
        out.push_back(lut);
    }
    std::sort(out.begin(), out.end(),
              [](const Lut& a, const Lut& b) { return encode_hex(a) < encode_hex(b); });
    return out;
}

// --- Oracles -----------------------------------------------------------------

NcVerdict finite_support_check(const Lut& lut, int window_w, int window_h, std::uint64_t budget,
                               int threads) {
    if (window_w < 1 || window_h < 1) throw error(errc::dimension_too_small, "window must be at least 1x1");
    const std::string method = "finite-support " + std::to_string(window_w) + "x" + std::to_string(window_h);
    const int tw = window_w + 4;
    const int th = window_h + 4;
    if (!lut.quiescent()) return non_quiescent_verdict(lut, tw, th, method);

    const int cells = window_w * window_h;
    if (cells >= 63 || (std::uint64_t{1} << cells) > budget) {
        throw error(errc::window_too_large, std::to_string(cells) + " window cells exceed the budget");
    }
    const std::uint64_t total = std::uint64_t{1} << cells;
    std::atomic<std::uint64_t> first_bad{std::numeric_limits<std::uint64_t>::max()};

    const auto build = [&](std::uint64_t mask) {
        Configuration c(tw, th);
        for (int k = 0; k < cells; ++k) {
            if ((mask >> k) & 1u) c.set({2 + k % window_w, 2 + k / window_w}, true);
        }
        return c;
    };
    parallel_chunks(total, threads, [&](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t mask = b; mask < e && mask < first_bad.load(); ++mask) {
            const Configuration c = build(mask);
            int after = 0;
            if (population_change(lut, c, after) != 0) {
                std::uint64_t cur = first_bad.load();
                while (mask < cur && !first_bad.compare_exchange_weak(cur, mask)) {
                }
                return;
            }
        }
    });
    const std::uint64_t bad = first_bad.load();
    if (bad == std::numeric_limits<std::uint64_t>::max()) return {true, std::nullopt, method};
    const Configuration c = build(bad);
    int after = 0;
    population_change(lut, c, after);
    return {false, ConservationWitness{c, population(c), after}, method};
}

NcVerdict torus_check(const Lut& lut, int width, int height, TorusMode mode, std::uint64_t budget,
                      int threads) {
    if (width < 3 || height < 3) throw error(errc::dimension_too_small, "torus must be at least 3x3");
    const bool exhaustive = std::holds_alternative<Exhaustive>(mode);
    const int cells = width * height;
    std::string method = "torus " + std::to_string(width) + "x" + std::to_string(height);

    std::uint64_t total;
    std::uint64_t seed = 0;
    if (exhaustive) {
        if (cells >= 63 || (std::uint64_t{1} << cells) > budget) {
            throw error(errc::budget_exceeded, "2^" + std::to_string(cells) + " configurations exceed the budget");
        }
        total = std::uint64_t{1} << cells;
        method += " exhaustive";
    } else {
        const auto& r = std::get<RandomSamples>(mode);
        if (r.samples > budget) throw error(errc::budget_exceeded, "sample count exceeds the budget");
        total = r.samples;
        seed = r.seed;
        method += " random(" + std::to_string(r.samples) + ", seed " + std::to_string(r.seed) + ")";
    }

    const auto build = [&](std::uint64_t n) {
        if (!exhaustive) return random_config(width, height, 0.5, splitmix64(seed ^ splitmix64(n)));
        Configuration c(width, height);
        for (int k = 0; k < cells; ++k) {
            if ((n >> k) & 1u) c.set({k % width, k / width}, true);
        }
        return c;
    };
    std::atomic<std::uint64_t> first_bad{std::numeric_limits<std::uint64_t>::max()};
    parallel_chunks(total, threads, [&](std::uint64_t b, std::uint64_t e) {
        for (std::uint64_t n = b; n < e && n < first_bad.load(); ++n) {
            int after = 0;
            if (population_change(lut, build(n), after) != 0) {
                std::uint64_t cur = first_bad.load();
                while (n < cur && !first_bad.compare_exchange_weak(cur, n)) {
                }
                return;
            }
        }
    });
    const std::uint64_t bad = first_bad.load();
    if (bad == std::numeric_limits<std::uint64_t>::max()) return {true, std::nullopt, method};
    const Configuration c = build(bad);
    int after = 0;
    population_change(lut, c, after);
    return {false, ConservationWitness{c, population(c), after}, method};
}

} // namespace flowca
