// pathsim — command-line front end for the two-photon interferometer
// simulator. Subcommands: run | sweep | sample | chsh | frames | ambiguity.
//
// Exit codes: 0 success, 2 user input error (CLI usage, parse or compile
// errors, invalid physics inputs), 3 environment error (missing file,
// unwritable output).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>

#include "pathsim/dsl.hpp"
#include "pathsim/output.hpp"

namespace {

using namespace pathsim;

constexpr int kExitOk = 0;
constexpr int kExitUserError = 2;
constexpr int kExitEnvError = 3;

struct CommonOpts {
    std::string format = "table";
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.out_path, "Write output to a file instead of stdout");
}

bool color_enabled() {
    if (std::getenv("PATHSIM_NO_COLOR") != nullptr) return false;
    return isatty(fileno(stdout)) != 0;
}

// Throws on I/O failure so main maps it to the environment exit code.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path + "'");
    return ss.str();
}

struct DslError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

dsl::CompiledExperiment load_experiment(const std::string& path) {
    dsl::SourceText src{path.empty() ? "" : read_file(path), path.empty() ? "(defaults)" : path};
    const dsl::ParseResult parsed = dsl::parse(src);
    if (!parsed.ok()) {
        std::string message;
        for (const auto& e : parsed.errors) {
            message += src.origin + ":" + std::to_string(e.line) + ":" + std::to_string(e.column) +
                       ": " + e.message + "\n";
        }
        throw DslError(message);
    }
    return dsl::compile(*parsed.ast);
}

void emit(const OutputRecord& record, const CommonOpts& opts) {
    std::string text;
    if (opts.format == "json") {
        text = render_json(record);
    } else if (opts.format == "csv") {
        text = render_csv(record);
    } else {
        text = render_table(record, opts.out_path.empty() && color_enabled());
    }
    if (opts.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + opts.out_path + "' for writing");
    out << text;
    if (!out) throw IoError("failed writing '" + opts.out_path + "'");
}

double parse_phase_flag(const std::string& text, const std::string& flag) {
    const auto value = dsl::parse_number(text);
    if (!value) {
        throw std::invalid_argument("flag " + flag + ": malformed number '" + text +
                                    "' (decimal or pi-rational, e.g. -pi/4)");
    }
    return value->radians();
}

int cmd_run(const std::string& file, const CommonOpts& opts) {
    const auto exp = load_experiment(file);
    emit(run_record(file, exp.scenario, run_scenario(exp.scenario)), opts);
    return kExitOk;
}

int cmd_sweep(const std::string& file, const CommonOpts& opts) {
    const auto exp = load_experiment(file);
    if (!exp.run.sweep) {
        throw std::invalid_argument("'" + file + "' has no sweep statement");
    }
    const auto& sw = *exp.run.sweep;
    const auto grid = dsl::sweep_grid(sw);
    const auto target = sw.target == "phi1" ? SweepTarget::Phi1 : SweepTarget::Phi3;
    emit(sweep_record(file, exp.scenario, sw, sweep(exp.scenario, target, grid)), opts);
    return kExitOk;
}

int cmd_sample(const std::string& file, const CommonOpts& opts, std::optional<std::uint64_t> seed,
               std::optional<std::uint64_t> samples) {
    const auto exp = load_experiment(file);
    if (!seed && exp.run.seed_set) seed = exp.run.seed;
    if (!samples && exp.run.samples_set) samples = exp.run.samples;
    if (!seed) throw std::invalid_argument("sample needs --seed or a seed statement in the file");
    if (!samples || *samples == 0) {
        throw std::invalid_argument("sample needs --samples or a samples statement in the file");
    }
    emit(sample_record(file, exp.scenario, *seed, *samples,
                       sample_events(exp.scenario, *samples, *seed)),
         opts);
    return kExitOk;
}

int cmd_chsh(const std::string& a, const std::string& a2, const std::string& b,
             const std::string& b2, const CommonOpts& opts) {
    emit(chsh_record(parse_phase_flag(a, "--a"), parse_phase_flag(a2, "--a2"),
                     parse_phase_flag(b, "--b"), parse_phase_flag(b2, "--b2")),
         opts);
    return kExitOk;
}

int cmd_frames(const std::string& file, const CommonOpts& opts) {
    const auto exp = load_experiment(file);
    emit(frames_record(file.empty() ? "(defaults)" : file, exp.scenario, exp.geometry,
                       find_frames(exp.geometry)),
         opts);
    return kExitOk;
}

int cmd_ambiguity(const std::string& file, const CommonOpts& opts, double lambda,
                  const std::string& model_override, std::uint32_t grid) {
    const auto exp = load_experiment(file);
    const dsl::ModelStmt model_stmt =
        model_override.empty() ? exp.model : dsl::ModelStmt{model_override, {}};
    const NonlocalOutcomeModel model = make_model(model_stmt.name, model_stmt.params);
    const FramePair frames = find_frames(exp.geometry);
    const HiddenVariable hv(lambda);
    const AmbiguityReport report =
        ambiguity_check(model, exp.scenario, frames.i1, frames.i2, exp.geometry, hv);

    std::vector<double> grid_points;
    grid_points.reserve(grid);
    for (std::uint32_t k = 0; k < grid; ++k) {
        grid_points.push_back(2.0 * std::numbers::pi * static_cast<double>(k) /
                              static_cast<double>(grid));
    }
    const NoSignalingCertificate cert = no_signaling_certificate(grid_points, grid_points);
    emit(ambiguity_record(file.empty() ? "(defaults)" : file, exp.scenario, frames, model,
                          hv.value(), report, cert, static_cast<std::size_t>(grid) * grid),
         opts);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-stage path-entangled two-photon interferometer simulator"};
    app.require_subcommand(1);

    std::string file;
    CommonOpts run_opts, sweep_opts, sample_opts, chsh_opts, frames_opts, ambiguity_opts;

    auto* run = app.add_subcommand("run", "Joint amplitudes and probabilities for an experiment");
    run->add_option("file", file, "Experiment file (.exp)")->required();
    add_common(run, run_opts);

    auto* sw = app.add_subcommand("sweep", "Correlation E over the file's sweep grid");
    sw->add_option("file", file, "Experiment file (.exp)")->required();
    add_common(sw, sweep_opts);

    std::optional<std::uint64_t> seed_flag;
    std::optional<std::uint64_t> samples_flag;
    auto* sample = app.add_subcommand("sample", "Seeded detection counts");
    sample->add_option("file", file, "Experiment file (.exp)")->required();
    sample->add_option("--seed", seed_flag, "RNG seed (overrides the file)");
    sample->add_option("--samples", samples_flag, "Number of draws (overrides the file)");
    add_common(sample, sample_opts);

    std::string a = "0", a2 = "0", b = "0", b2 = "0";
    auto* chsh_cmd = app.add_subcommand("chsh", "CHSH score for four phase settings");
    chsh_cmd->add_option("--a", a, "First phi1 setting (radians or pi-form)")->required();
    chsh_cmd->add_option("--a2", a2, "Second phi1 setting")->required();
    chsh_cmd->add_option("--b", b, "First phi3 setting")->required();
    chsh_cmd->add_option("--b2", b2, "Second phi3 setting")->required();
    add_common(chsh_cmd, chsh_opts);

    auto* frames = app.add_subcommand("frames", "Interval classes, frames I1/I2, and orderings");
    frames->add_option("file", file, "Experiment file (defaults apply if omitted)");
    add_common(frames, frames_opts);

    double lambda = 0.0;
    std::string model_override;
    std::uint32_t ns_grid = 50;
    auto* ambiguity = app.add_subcommand(
        "ambiguity", "Frame dependence of a nonlocal outcome model plus the no-signaling certificate");
    ambiguity->add_option("file", file, "Experiment file (defaults apply if omitted)");
    ambiguity->add_option("--lambda", lambda, "Hidden-variable value")->capture_default_str();
    ambiguity->add_option("--model", model_override, "Model name (overrides the file)");
    ambiguity->add_option("--ns-grid", ns_grid, "No-signaling grid points per phase")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_common(ambiguity, ambiguity_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUserError;
    }

    try {
        if (run->parsed()) return cmd_run(file, run_opts);
        if (sw->parsed()) return cmd_sweep(file, sweep_opts);
        if (sample->parsed()) return cmd_sample(file, sample_opts, seed_flag, samples_flag);
        if (chsh_cmd->parsed()) return cmd_chsh(a, a2, b, b2, chsh_opts);
        if (frames->parsed()) return cmd_frames(file, frames_opts);
        if (ambiguity->parsed()) return cmd_ambiguity(file, ambiguity_opts, lambda, model_override, ns_grid);
    } catch (const DslError& e) {
        std::cerr << e.what();
        return kExitUserError;
    } catch (const dsl::CompileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUserError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUserError;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUserError;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEnvError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitEnvError;
    }
    return kExitOk;
}
