#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "flowca/grid.hpp"
#include "flowca/lut.hpp"
#include "flowca/rules.hpp"

namespace flowca {

// Synchronous update of every cell through the table, toroidal wrap.
Configuration step(const Configuration& config, const Lut& lut);

// Per-cell reference evaluation via neighborhood_pattern; slow, used to check `step`.
Configuration step_reference(const Configuration& config, const Lut& lut);

// Receives t = 0 (the input) through t = steps.
using FrameSink = std::function<void(int t, const Configuration&)>;

Configuration run(const Configuration& config, const Lut& lut, int steps, const FrameSink& emit = {});

// Writes frame_{t:04}.pbm into a directory.
class PbmFrameWriter {
public:
    explicit PbmFrameWriter(std::filesystem::path dir);
    void operator()(int t, const Configuration& config) const;

private:
    std::filesystem::path dir_;
};

struct Move {
    Coord from;
    Coord to;

    friend bool operator==(const Move&, const Move&) = default;
};

// One move per particle, sorted by source (row-major from j = 0).
struct DisplacementMap {
    int width = 0;
    int height = 0;
    std::vector<Move> moves;

    bool injective() const;
    std::optional<Coord> target_of(Coord source) const;
};

DisplacementMap displacement_map(const Configuration& config, const RuleSpec& spec);
// No validation; the motion must come from a valid spec.
DisplacementMap displacement_map(const Configuration& config, const Motion& motion);

Configuration apply(const DisplacementMap& map);

struct ParticleTrace {
    int particle_id = 0;
    std::vector<Coord> positions;
};

std::vector<ParticleTrace> track(const Configuration& config, const RuleSpec& spec, int steps,
                                 std::span<const Coord> selected);

// CSV with header particle_id,t,i,j.
void write_traces_csv(std::ostream& out, std::span<const ParticleTrace> traces);

// Two distinct configurations with the same image.
struct CollisionWitness {
    Configuration x;
    Configuration y;
    Configuration image;
};

// Searches structured and seeded random starts on tori up to the given size,
// following each orbit until it repeats. Not finding a witness proves nothing.
std::optional<CollisionWitness> find_noninjectivity(const Lut& lut, int max_width, int max_height,
                                                    std::uint64_t budget, std::uint64_t seed = 0);

// Deterministic across platforms: raw mt19937_64 output, no std distributions.
Configuration random_config(int width, int height, double density, std::uint64_t seed);

// Bijective mixer for deriving per-sample seeds.
std::uint64_t splitmix64(std::uint64_t x);

} // namespace flowca
