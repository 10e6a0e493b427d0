#include "flowca/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "flowca/conservation.hpp"
#include "flowca/lut.hpp"
#include "flowca/rules.hpp"
#include "flowca/simulator.hpp"
#include "flowca/spec_json.hpp"

namespace flowca::cli {

namespace {

struct HelpRequested {
    std::string text;
};

// Raised when reading or writing a file fails.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GridSize parse_grid_size(const std::string& text) {
    const auto x = text.find_first_of("xX");
    if (x == std::string::npos) throw CLI::ValidationError("expected WxH, got '" + text + "'");
    try {
        std::size_t used = 0;
        const int w = std::stoi(text.substr(0, x), &used);
        if (used != x) throw std::invalid_argument(text);
        const std::string rest = text.substr(x + 1);
        const int h = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(text);
        if (w < 1 || h < 1) throw std::invalid_argument(text);
        return {w, h};
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("expected WxH, got '" + text + "'");
    }
}

Coord parse_coord(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("expected i,j, got '" + text + "'");
    try {
        return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("expected i,j, got '" + text + "'");
    }
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

template <class Fn>
auto from_file(const std::string& path, Fn&& parse) {
    const std::string text = read_file(path);
    try {
        return parse(text);
    } catch (const error& e) {
        throw IoError(path + ": " + e.what());
    }
}

std::uint64_t effective_budget(const CommandPlan& plan, std::uint64_t fallback) {
    if (plan.budget) return *plan.budget;
    if (const char* env = std::getenv("FLOWCA_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::logic_error&) {
            throw UsageError(std::string("FLOWCA_BUDGET is not a number: ") + env);
        }
    }
    return fallback;
}

std::optional<RuleSpec> load_spec(const CommandPlan& plan) {
    if (!plan.spec_file) return std::nullopt;
    return from_file(*plan.spec_file, [](const std::string& t) { return parse_spec_json(t); });
}

NeighborhoodKind require_neighborhood(const CommandPlan& plan) {
    if (!plan.neighborhood) throw UsageError("--neighborhood is required with --lut/--lut-file");
    return *plan.neighborhood;
}

// Table from --lut, --lut-file or --spec (compiled).
Lut load_lut(const CommandPlan& plan, std::optional<RuleSpec>* spec_out = nullptr) {
    if (plan.lut_hex) {
        try {
            return decode_hex(*plan.lut_hex, require_neighborhood(plan));
        } catch (const error& e) {
            throw UsageError(std::string("--lut: ") + e.what());
        }
    }
    if (plan.lut_file) {
        const NeighborhoodKind kind = require_neighborhood(plan);
        return from_file(*plan.lut_file, [&](const std::string& t) { return decode_hex(t, kind); });
    }
    if (auto spec = load_spec(plan)) {
        if (plan.neighborhood && *plan.neighborhood != spec->kind) {
            throw UsageError("--neighborhood does not match the spec");
        }
        const Lut lut = compile_spec(*spec);
        if (spec_out) *spec_out = std::move(spec);
        return lut;
    }
    throw UsageError("one of --lut, --lut-file or --spec is required");
}

Configuration load_initial(const CommandPlan& plan) {
    if (plan.input) {
        return from_file(*plan.input, [](const std::string& t) { return parse_pbm(t); });
    }
    if (plan.random_grid) {
        try {
            return random_config(plan.random_grid->width, plan.random_grid->height, plan.density, plan.seed);
        } catch (const error& e) {
            throw UsageError(std::string("--random: ") + e.what());
        }
    }
    throw UsageError("one of --input or --random is required");
}

// Writes to --output, or to `out` when absent.
template <class Fn>
void emit(const CommandPlan& plan, std::ostream& out, Fn&& write) {
    if (!plan.output) {
        write(out);
        return;
    }
    std::ofstream file(*plan.output);
    if (!file) throw IoError("cannot write '" + *plan.output + "'");
    write(file);
    if (!file) throw IoError("write to '" + *plan.output + "' failed");
}

void print_witness(std::ostream& out, const std::optional<ConservationWitness>& w) {
    if (!w) return;
    out << "before: " << w->before << "\nafter: " << w->after << "\nwitness:\n";
    write_pbm(out, w->config);
}

// --- Subcommands -------------------------------------------------------------

int cmd_enumerate(const CommandPlan& plan, std::ostream& out) {
    const NeighborhoodKind kind = plan.neighborhood.value_or(NeighborhoodKind::rect2x3);
    std::vector<std::string> lines;
    if (plan.method == "durand") {
        if (kind != NeighborhoodKind::rect2x3) throw UsageError("--method durand is only defined for 2x3");
        for (const Lut& lut : enumerate_nc_2x3(plan.threads)) lines.push_back(encode_hex(lut));
    } else {
        if (kind == NeighborhoodKind::moore9) throw UsageError("the Moore rule space is not enumerable");
        for (const RuleSpec& s : enumerate_specs(kind)) lines.push_back(encode_hex(compile_spec(s)));
    }
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    for (const std::string& l : lines) out << l << '\n';
    out << "# total: " << lines.size() << '\n';
    return exit_ok;
}

int cmd_verify(const CommandPlan& plan, std::ostream& out) {
    std::optional<RuleSpec> spec;
    const Lut lut = load_lut(plan, &spec);
    const std::uint64_t budget = effective_budget(plan, default_oracle_budget);

    if (spec) {
        // compile_spec succeeded, so the spec is valid and conserving by construction.
        out << "CONSERVING\nmethod: certified-by-construction\nlut: " << encode_hex(lut) << '\n';
        return exit_ok;
    }
    if (lut.kind() == NeighborhoodKind::rect2x3) {
        const NcVerdict v = durand_check_2x3(lut);
        out << (v.conserving ? "CONSERVING" : "VIOLATION") << "\nmethod: " << v.method << '\n';
        print_witness(out, v.witness);
        return v.conserving ? exit_ok : exit_negative;
    }

    std::vector<NcVerdict> runs;
    runs.push_back(finite_support_check(lut, plan.window.width, plan.window.height, budget, plan.threads));
    if (runs.back().conserving) {
        runs.push_back(torus_check(lut, plan.torus.width, plan.torus.height, Exhaustive{}, budget, plan.threads));
    }
    if (runs.back().conserving && plan.samples > 0) {
        runs.push_back(torus_check(lut, plan.random_torus.width, plan.random_torus.height,
                                   RandomSamples{plan.samples, plan.seed}, budget, plan.threads));
    }
    const NcVerdict& last = runs.back();
    if (!last.conserving) {
        out << "VIOLATION\nmethod: " << last.method << '\n';
        print_witness(out, last.witness);
        return exit_negative;
    }
    out << "CONSERVING\nmethod: oracle-tested";
    for (std::size_t k = 0; k < runs.size(); ++k) out << (k ? "; " : " (") << runs[k].method;
    out << ")\n";
    return exit_ok;
}

int cmd_compile(const CommandPlan& plan, std::ostream& out, std::ostream& err) {
    auto spec = load_spec(plan);
    if (!spec) throw UsageError("--spec is required");
    const auto violations = validate_spec(*spec);
    if (!violations.empty()) {
        out << "INVALID\n";
        for (const Violation& v : violations) err << to_string(v.kind) << ": " << v.message << '\n';
        return exit_negative;
    }
    emit(plan, out, [&](std::ostream& o) { o << encode_hex(compile_spec(*spec)) << '\n'; });
    return exit_ok;
}

int cmd_recognize(const CommandPlan& plan, std::ostream& out) {
    const Lut lut = load_lut(plan);
    const NeighborhoodKind kind = lut.kind();
    if (kind == NeighborhoodKind::moore9) {
        const auto r = recognize_moore(lut, effective_budget(plan, 4096));
        if (const auto* s = std::get_if<RuleSpec>(&r)) {
            out << spec_to_json(*s) << '\n';
            return exit_ok;
        }
        out << "UNKNOWN\n";
        return exit_negative;
    }
    if (kind == NeighborhoodKind::rect2x3) {
        const auto r = recognize_2x3(lut);
        if (const auto* s = std::get_if<RuleSpec>(&r)) {
            out << spec_to_json(*s) << '\n';
            return exit_ok;
        }
        out << "NOT-REPRESENTABLE\n";
        return exit_negative;
    }
    for (const RuleSpec& s : enumerate_specs(kind)) {
        if (compile_spec(s) == lut) {
            out << spec_to_json(s) << '\n';
            return exit_ok;
        }
    }
    out << "NOT-REPRESENTABLE\n";
    return exit_negative;
}

int cmd_simulate(const CommandPlan& plan, std::ostream& out) {
    const Lut lut = load_lut(plan);
    const Configuration initial = load_initial(plan);
    FrameSink sink;
    if (plan.frames_dir) {
        try {
            sink = PbmFrameWriter(*plan.frames_dir);
        } catch (const std::exception& e) {
            throw IoError(e.what());
        }
    }
    Configuration final_config = [&] {
        try {
            return run(initial, lut, plan.steps, sink);
        } catch (const std::runtime_error& e) {
            if (dynamic_cast<const error*>(&e)) throw;
            throw IoError(e.what());
        }
    }();
    emit(plan, out, [&](std::ostream& o) { write_pbm(o, final_config); });
    return exit_ok;
}

int cmd_track(const CommandPlan& plan, std::ostream& out) {
    auto spec = load_spec(plan);
    if (!spec) throw UsageError("track needs --spec (particle identity comes from the rule spec)");
    const Configuration initial = load_initial(plan);

    std::vector<Coord> selected = plan.select;
    if (selected.empty()) {
        std::vector<Coord> all;
        for (int j = 0; j < initial.height(); ++j) {
            for (int i = 0; i < initial.width(); ++i) {
                if (initial.get({i, j})) all.push_back({i, j});
            }
        }
        std::mt19937_64 rng(plan.seed);
        for (std::size_t k = all.size(); k > 1; --k) std::swap(all[k - 1], all[rng() % k]);
        all.resize(std::min(all.size(), static_cast<std::size_t>(std::max(plan.particles, 0))));
        selected = std::move(all);
    }
    const auto traces = track(initial, *spec, plan.steps, selected);
    emit(plan, out, [&](std::ostream& o) { write_traces_csv(o, traces); });
    return exit_ok;
}

int cmd_witness(const CommandPlan& plan, std::ostream& out) {
    const Lut lut = load_lut(plan);
    const auto hit = find_noninjectivity(lut, plan.max_grid.width, plan.max_grid.height,
                                         effective_budget(plan, 1'000'000), plan.seed);
    if (!hit) {
        out << "NOT-FOUND\n";
        return exit_negative;
    }
    emit(plan, out, [&](std::ostream& o) {
        o << "WITNESS\nx:\n";
        write_pbm(o, hit->x);
        o << "y:\n";
        write_pbm(o, hit->y);
        o << "image:\n";
        write_pbm(o, hit->image);
    });
    return exit_ok;
}

} // namespace

CommandPlan parse_args(const std::vector<std::string>& args) {
    CommandPlan plan;
    CLI::App app{"Number-conserving binary cellular automata toolkit", "flowca"};
    app.require_subcommand(1);

    std::string neighborhood;
    std::string window, torus, random_torus, random_grid, max_grid;
    std::vector<std::string> select;

    const auto add_neighborhood = [&](CLI::App* sub) {
        sub->add_option("--neighborhood", neighborhood, "2x3, vonneumann or moore")
            ->check(CLI::IsMember({"2x3", "vonneumann", "moore"}));
    };
    const auto add_rule_source = [&](CLI::App* sub) {
        add_neighborhood(sub);
        auto* lut = sub->add_option("--lut", plan.lut_hex, "rule table in hex");
        auto* lut_file = sub->add_option("--lut-file", plan.lut_file, "file holding the hex table");
        auto* spec = sub->add_option("--spec", plan.spec_file, "rule spec JSON file");
        lut->excludes(lut_file)->excludes(spec);
        lut_file->excludes(spec);
    };
    const auto add_initial = [&](CLI::App* sub) {
        auto* in = sub->add_option("--input", plan.input, "initial configuration (PBM P1)");
        auto* rnd = sub->add_option("--random", random_grid, "random initial configuration WxH");
        in->excludes(rnd);
        sub->add_option("--density", plan.density, "density for --random")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--steps", plan.steps, "number of time steps")->check(CLI::NonNegativeNumber);
        sub->add_option("--output", plan.output, "output file (default: stdout)");
    };
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", plan.seed, "random seed");
        sub->add_option("--threads", plan.threads, "worker threads")->check(CLI::PositiveNumber);
    };

    auto* enumerate = app.add_subcommand("enumerate", "list number-conserving tables");
    add_neighborhood(enumerate);
    enumerate->add_option("--method", plan.method, "durand (exact scan) or algebra (rule specs)")
        ->check(CLI::IsMember({"durand", "algebra"}));
    add_common(enumerate);

    auto* verify = app.add_subcommand("verify", "check number conservation");
    add_rule_source(verify);
    verify->add_option("--window", window, "finite-support window WxH");
    verify->add_option("--torus", torus, "exhaustive torus WxH");
    verify->add_option("--random-torus", random_torus, "random-sample torus WxH");
    verify->add_option("--samples", plan.samples, "random torus samples");
    verify->add_option("--budget", plan.budget, "configuration budget");
    add_common(verify);

    auto* compile = app.add_subcommand("compile", "compile a rule spec to hex");
    compile->add_option("--spec", plan.spec_file, "rule spec JSON file")->required();
    compile->add_option("--output", plan.output, "output file (default: stdout)");

    auto* recognize = app.add_subcommand("recognize", "recover a rule spec from a table");
    add_rule_source(recognize);
    recognize->add_option("--budget", plan.budget, "verification attempts for Moore tables");

    auto* simulate = app.add_subcommand("simulate", "evolve a configuration");
    add_rule_source(simulate);
    add_initial(simulate);
    simulate->add_option("--frames", plan.frames_dir, "directory for frame_NNNN.pbm");
    add_common(simulate);

    auto* trk = app.add_subcommand("track", "trace individual particles");
    trk->add_option("--spec", plan.spec_file, "rule spec JSON file")->required();
    add_initial(trk);
    trk->add_option("--select", select, "particle coordinate i,j (repeatable)");
    trk->add_option("--particles", plan.particles, "number of randomly chosen particles")
        ->check(CLI::NonNegativeNumber);
    add_common(trk);

    auto* witness = app.add_subcommand("witness", "search for two configurations with equal image");
    add_rule_source(witness);
    witness->add_option("--max-grid", max_grid, "largest torus WxH (default 8x8)");
    witness->add_option("--budget", plan.budget, "step budget");
    witness->add_option("--output", plan.output, "output file (default: stdout)");
    add_common(witness);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (!neighborhood.empty()) plan.neighborhood = parse_neighborhood(neighborhood);
        if (!window.empty()) plan.window = parse_grid_size(window);
        if (!torus.empty()) plan.torus = parse_grid_size(torus);
        if (!random_torus.empty()) plan.random_torus = parse_grid_size(random_torus);
        if (!random_grid.empty()) plan.random_grid = parse_grid_size(random_grid);
        if (!max_grid.empty()) plan.max_grid = parse_grid_size(max_grid);
        for (const std::string& s : select) plan.select.push_back(parse_coord(s));
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::Error& e) {
        throw UsageError(e.what());
    }
    plan.command = app.get_subcommands().front()->get_name();
    return plan;
}

int execute(const CommandPlan& plan, std::ostream& out, std::ostream& err) {
    try {
        if (plan.command == "enumerate") return cmd_enumerate(plan, out);
        if (plan.command == "verify") return cmd_verify(plan, out);
        if (plan.command == "compile") return cmd_compile(plan, out, err);
        if (plan.command == "recognize") return cmd_recognize(plan, out);
        if (plan.command == "simulate") return cmd_simulate(plan, out);
        if (plan.command == "track") return cmd_track(plan, out);
        if (plan.command == "witness") return cmd_witness(plan, out);
        throw UsageError("unknown command '" + plan.command + "'");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const error& e) {
        if (e.code() == errc::invalid_spec) {
            err << "error: " << e.what() << '\n';
            return exit_negative;
        }
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CommandPlan plan;
    try {
        plan = parse_args(args);
    } catch (const HelpRequested& h) {
        out << h.text;
        return exit_ok;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\nrun 'flowca --help' for usage\n";
        return exit_usage;
    }
    return execute(plan, out, err);
}

} // namespace flowca::cli
