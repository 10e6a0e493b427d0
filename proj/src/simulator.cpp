#include "flowca/simulator.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <ostream>
#include <random>

namespace flowca {

namespace {

int wrap(int v, int n) {
    const int r = v % n;
    return r < 0 ? r + n : r;
}

bool bit_at(std::span<const std::uint64_t> row, int i) {
    return (row[static_cast<std::size_t>(i) / 64] >> (i % 64)) & 1u;
}

} // namespace

Configuration step(const Configuration& config, const Lut& lut) {
    const int w = config.width();
    const int h = config.height();
    const auto offs = neighborhood_offsets(lut.kind());
    const std::size_t m = offs.size();

    Configuration out(w, h);
    std::array<std::span<const std::uint64_t>, 9> rows;
    std::vector<int> col_left(static_cast<std::size_t>(w)), col_right(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) {
        col_left[static_cast<std::size_t>(i)] = wrap(i - 1, w);
        col_right[static_cast<std::size_t>(i)] = wrap(i + 1, w);
    }
    for (int j = 0; j < h; ++j) {
        for (std::size_t k = 0; k < m; ++k) rows[k] = config.row_words(wrap(j + offs[k].dj, h));
        for (int i = 0; i < w; ++i) {
            std::uint32_t index = 0;
            for (std::size_t k = 0; k < m; ++k) {
                const int di = offs[k].di;
                const int col = di == 0 ? i : (di < 0 ? col_left[static_cast<std::size_t>(i)]
                                                      : col_right[static_cast<std::size_t>(i)]);
                index = (index << 1) | (bit_at(rows[k], col) ? 1u : 0u);
            }
            if (lut[index]) out.set({i, j}, true);
        }
    }
    return out;
}

Configuration step_reference(const Configuration& config, const Lut& lut) {
    Configuration out(config.width(), config.height());
    for (int j = 0; j < config.height(); ++j) {
        for (int i = 0; i < config.width(); ++i) {
            out.set({i, j}, lut_eval(lut, neighborhood_pattern(config, {i, j}, lut.kind())));
        }
    }
    return out;
}

Configuration run(const Configuration& config, const Lut& lut, int steps, const FrameSink& emit) {
    Configuration current = config;
    if (emit) emit(0, current);
    for (int t = 1; t <= steps; ++t) {
        current = step(current, lut);
        if (emit) emit(t, current);
    }
    return current;
}

PbmFrameWriter::PbmFrameWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

void PbmFrameWriter::operator()(int t, const Configuration& config) const {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04d.pbm", t);
    std::ofstream out(dir_ / name);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
    write_pbm(out, config);
}

// --- Displacement maps -------------------------------------------------------

bool DisplacementMap::injective() const {
    std::vector<Coord> targets;
    targets.reserve(moves.size());
    for (const Move& mv : moves) targets.push_back(mv.to);
    std::sort(targets.begin(), targets.end());
    return std::adjacent_find(targets.begin(), targets.end()) == targets.end();
}

std::optional<Coord> DisplacementMap::target_of(Coord source) const {
    const auto it = std::lower_bound(moves.begin(), moves.end(), source, [](const Move& mv, Coord c) {
        return std::pair(mv.from.j, mv.from.i) < std::pair(c.j, c.i);
    });
    if (it == moves.end() || it->from != source) return std::nullopt;
    return it->to;
}

DisplacementMap displacement_map(const Configuration& config, const Motion& motion) {
    DisplacementMap map{config.width(), config.height(), {}};
    map.moves.reserve(static_cast<std::size_t>(config.population()));
    for (int j = 0; j < config.height(); ++j) {
        for (int i = 0; i < config.width(); ++i) {
            const Coord q{i, j};
            if (!config.get(q)) continue;
            const Offset landing = motion.resolve([&](Offset o) { return config.get(q + o); });
            map.moves.push_back({q, config.normalize(q + landing)});
        }
    }
    return map;
}

DisplacementMap displacement_map(const Configuration& config, const RuleSpec& spec) {
    const auto violations = validate_spec(spec);
    if (!violations.empty()) {
        throw error(errc::invalid_spec, violations.front().message);
    }
    return displacement_map(config, Motion(spec));
}

Configuration apply(const DisplacementMap& map) {
    Configuration out(map.width, map.height);
    for (const Move& mv : map.moves) out.set(mv.to, true);
    return out;
}

std::vector<ParticleTrace> track(const Configuration& config, const RuleSpec& spec, int steps,
                                 std::span<const Coord> selected) {
    const auto violations = validate_spec(spec);
    if (!violations.empty()) throw error(errc::invalid_spec, violations.front().message);
    const Motion motion(spec);

    std::vector<ParticleTrace> traces;
    for (std::size_t k = 0; k < selected.size(); ++k) {
        const Coord at = config.normalize(selected[k]);
        if (!config.get(at)) {
            throw error(errc::not_a_particle, "no particle at (" + std::to_string(at.i) + "," +
                                                  std::to_string(at.j) + ")");
        }
        traces.push_back({static_cast<int>(k), {at}});
    }
    Configuration current = config;
    for (int t = 0; t < steps; ++t) {
        const DisplacementMap map = displacement_map(current, motion);
        for (ParticleTrace& tr : traces) {
            tr.positions.push_back(*map.target_of(tr.positions.back()));
        }
        current = apply(map);
    }
    return traces;
}

void write_traces_csv(std::ostream& out, std::span<const ParticleTrace> traces) {
    out << "particle_id,t,i,j\n";
    for (const ParticleTrace& tr : traces) {
        for (std::size_t t = 0; t < tr.positions.size(); ++t) {
            out << tr.particle_id << ',' << t << ',' << tr.positions[t].i << ',' << tr.positions[t].j << '\n';
        }
    }
}

// --- Random configurations ---------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

Configuration random_config(int width, int height, double density, std::uint64_t seed) {
    Configuration config(width, height);
    std::mt19937_64 rng(seed);
    const double scale = 1.0 / 9007199254740992.0; // 2^-53
    for (int j = 0; j < height; ++j) {
        for (int i = 0; i < width; ++i) {
            const double u = static_cast<double>(rng() >> 11) * scale;
            if (u < density) config.set({i, j}, true);
        }
    }
    return config;
}

// --- Non-injectivity search --------------------------------------------------

namespace {

std::vector<std::uint64_t> key_of(const Configuration& c) {
    std::vector<std::uint64_t> key;
    for (int j = 0; j < c.height(); ++j) {
        const auto row = c.row_words(j);
        key.insert(key.end(), row.begin(), row.end());
    }
    return key;
}

std::vector<Configuration> structured_seeds(int w, int h) {
    std::vector<Configuration> seeds;
    const auto add = [&](auto&& pred) {
        Configuration c(w, h);
        for (int j = 0; j < h; ++j) {
            for (int i = 0; i < w; ++i) {
                if (pred(i, j)) c.set({i, j}, true);
            }
        }
        seeds.push_back(std::move(c));
    };
    add([](int i, int j) { return i == 1 && j == 1; });
    add([](int i, int j) { return j == 1 && i <= 2; });
    add([&](int, int j) { return j == h / 2; });
    add([&](int i, int j) { return j == h / 2 && i != w / 2; });
    add([&](int i, int) { return i == w / 2; });
    add([&](int i, int j) { return i == w / 2 && j != h / 2; });
    add([](int i, int j) { return i == j; });
    add([&](int i, int j) { return (i + j) % w == w / 2; });
    add([](int i, int j) { return i <= 1 && j <= 1; });
    add([](int i, int j) { return (i + j) % 2 == 0; });
    add([](int i, int j) { return i % 2 == 0 && j % 2 == 0; });
    add([&](int i, int j) { return j <= 1 && i < w - 1; });
    add([&](int i, int j) { return i <= 1 && j < h - 1; });
    return seeds;
}

// Follows the orbit of `x` until a state repeats. When the repeat is not
// `x` itself, the two preimages of the first repeated state collide.
std::optional<CollisionWitness> probe_orbit(const Lut& lut, const Configuration& x,
                                            std::uint64_t& budget, std::size_t max_len) {
    std::map<std::vector<std::uint64_t>, std::size_t> seen;
    std::vector<Configuration> orbit{x};
    seen.emplace(key_of(x), 0);
    while (orbit.size() <= max_len && budget > 0) {
        --budget;
        Configuration next = step(orbit.back(), lut);
        const auto [it, fresh] = seen.emplace(key_of(next), orbit.size());
        if (!fresh) {
            const std::size_t a = it->second;
            if (a == 0) return std::nullopt;
            CollisionWitness w{orbit[a - 1], orbit.back(), std::move(next)};
            if (w.x != w.y && step(w.x, lut) == w.image && step(w.y, lut) == w.image) return w;
            return std::nullopt;
        }
        orbit.push_back(std::move(next));
    }
    return std::nullopt;
}

} // namespace

std::optional<CollisionWitness> find_noninjectivity(const Lut& lut, int max_width, int max_height,
                                                    std::uint64_t budget, std::uint64_t seed) {
    if (max_width < 3 || max_height < 3) {
        throw error(errc::dimension_too_small, "search grid must be at least 3x3");
    }
    std::vector<std::pair<int, int>> sizes;
    for (int h = 3; h <= max_height; ++h) {
        for (int w = 3; w <= max_width; ++w) sizes.emplace_back(w, h);
    }
    std::sort(sizes.begin(), sizes.end(), [](auto a, auto b) {
        return std::pair(a.first * a.second, a) < std::pair(b.first * b.second, b);
    });

    for (const auto& [w, h] : sizes) {
        for (const Configuration& s : structured_seeds(w, h)) {
            if (budget == 0) return std::nullopt;
            if (auto hit = probe_orbit(lut, s, budget, static_cast<std::size_t>(4 * w * h))) return hit;
        }
    }
    for (std::uint64_t n = 0; budget > 0; ++n) {
        const auto& [w, h] = sizes[n % sizes.size()];
        const Configuration x = random_config(w, h, 0.5, splitmix64(seed + n));
        if (auto hit = probe_orbit(lut, x, budget, static_cast<std::size_t>(4 * w * h))) return hit;
    }
    return std::nullopt;
}

} // namespace flowca
