#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowca/grid.hpp"

namespace flowca::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_negative = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_io = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridSize {
    int width = 0;
    int height = 0;
    friend bool operator==(const GridSize&, const GridSize&) = default;
};

// Fully resolved invocation; identical plans give identical output.
struct CommandPlan {
    std::string command;
    std::optional<NeighborhoodKind> neighborhood;
    std::string method = "durand";

    std::optional<std::string> lut_hex;
    std::optional<std::string> lut_file;
    std::optional<std::string> spec_file;

    std::optional<std::string> input;
    std::optional<GridSize> random_grid;
    double density = 0.5;
    int steps = 0;
    std::optional<std::string> frames_dir;
    std::optional<std::string> output;

    std::vector<Coord> select;
    int particles = 0;

    GridSize window{4, 4};
    GridSize torus{4, 4};
    GridSize random_torus{32, 32};
    std::uint64_t samples = 10000;
    GridSize max_grid{8, 8};

    std::uint64_t seed = 0;
    int threads = 1;
    std::optional<std::uint64_t> budget;
};

// Throws UsageError; unknown flags are rejected.
CommandPlan parse_args(const std::vector<std::string>& args);

int execute(const CommandPlan& plan, std::ostream& out, std::ostream& err);

// parse_args + execute with exit-code mapping; args exclude the program name.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace flowca::cli
