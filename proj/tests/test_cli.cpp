// End-to-end tests of the pathsim binary. The binary path and the shipped
// experiment directory come from PATHSIM_BIN / PATHSIM_EXPERIMENTS (set by
// the CTest environment).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

#include "oracles.hpp"
#include "pathsim/joint_state.hpp"
#include "schema_check.hpp"

using nlohmann::json;
using namespace pathsim;

namespace {

std::string env_or(const char* name, const std::string& fallback) {
    const char* value = std::getenv(name);
    return value != nullptr ? std::string(value) : fallback;
}

std::string binary() { return env_or("PATHSIM_BIN", "./tools/pathsim"); }
std::string experiments() { return env_or("PATHSIM_EXPERIMENTS", "../experiments"); }

struct CliResult {
    int exit_code;
    std::string output;  // stdout only
};

CliResult run_cli(const std::string& args) {
    const std::string command = binary() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buffer;
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        output.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

json load_schema() {
    std::ifstream in(env_or("PATHSIM_DOCS", "../docs") + "/output_schema.json");
    REQUIRE(in.good());
    json schema;
    in >> schema;
    return schema;
}

}  // namespace

TEST_CASE("missing input file exits 3") {
    CHECK(run_cli("run /no/such/file.exp").exit_code == 3);
}

TEST_CASE("parse errors exit 2 and report positions on stderr") {
    const auto path = write_temp("bad.exp", "detect L 2\nwat 1\n");
    const CliResult result = run_cli("run " + path.string());
    CHECK(result.exit_code == 2);

    // Rerun capturing stderr to check the position format.
    const std::string command = binary() + " run " + path.string() + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string all;
    std::array<char, 4096> buffer;
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) all.append(buffer.data(), got);
    pclose(pipe);
    CHECK(all.find(":1:10: stage must be 1 or 3") != std::string::npos);
    CHECK(all.find(":2:1: unknown keyword 'wat'") != std::string::npos);
}

TEST_CASE("unknown flags exit 2") {
    CHECK(run_cli("run --frobnicate x.exp").exit_code == 2);
    CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("run on eq3.exp reproduces the stage-1 amplitudes") {
    const CliResult result = run_cli("run " + experiments() + "/eq3.exp --format json");
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.output);
    CHECK(schema_check::validate(doc, load_schema(), "run").empty());
    CHECK(doc.at("scenario").at("phi1").get<double>() ==
          doctest::Approx(std::numbers::pi / 3).epsilon(1e-15));

    AmplitudeMap actual;
    for (const auto& a : doc.at("amplitudes")) {
        actual[{a.at("outcome_l").get<std::string>()[0], a.at("outcome_r").get<std::string>()[0]}] =
            Complex{a.at("re").get<double>(), a.at("im").get<double>()};
    }
    // The CLI prints the canonical global phase, so compare up to one phase.
    const JointState printed = JointState::from_amplitudes(actual);
    CHECK(oracles::max_mismatch_up_to_global_phase(oracles::expected_eq3(std::numbers::pi / 3),
                                                   printed) < 1e-12);
}

TEST_CASE("run on eq6.exp matches the mixed-detection table") {
    const CliResult result = run_cli("run " + experiments() + "/eq6.exp --format json");
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.output);
    for (const auto& a : doc.at("amplitudes")) {
        const std::string key =
            a.at("outcome_l").get<std::string>() + a.at("outcome_r").get<std::string>();
        const double p = a.at("probability").get<double>();
        if (key == "cf" || key == "de") {
            CHECK(p == doctest::Approx(0.5).epsilon(1e-12));
        } else {
            CHECK(p < 1e-12);
        }
    }
}

TEST_CASE("run at phi1 = 0 concentrates on the cross outcomes") {
    const auto path = write_temp("eq3_zero.exp", "phase phi1 = 0\ndetect L 1\ndetect R 1\n");
    const CliResult result = run_cli("run " + path.string() + " --format csv");
    REQUIRE(result.exit_code == 0);
    std::istringstream lines(result.output);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        const std::string key = line.substr(0, 3);
        const double p = std::stod(line.substr(line.rfind(',') + 1));
        if (key == "d,c" || key == "c,d") {
            CHECK(p == doctest::Approx(0.5).epsilon(1e-12));
        } else {
            CHECK(p < 1e-12);
        }
    }
}

TEST_CASE("identical invocations give byte-identical output") {
    for (const std::string format : {"json", "csv"}) {
        const std::string args = "run " + experiments() + "/eq5.exp --format " + format;
        const CliResult first = run_cli(args);
        const CliResult second = run_cli(args);
        REQUIRE(first.exit_code == 0);
        CHECK(first.output == second.output);
        CHECK_FALSE(first.output.empty());
    }
}

TEST_CASE("sample requires seed and samples") {
    const std::string eq3 = experiments() + "/eq3.exp";
    CHECK(run_cli("sample " + eq3).exit_code == 2);
    CHECK(run_cli("sample " + eq3 + " --seed 7").exit_code == 2);

    const CliResult ok = run_cli("sample " + eq3 + " --seed 7 --samples 1000 --format json");
    REQUIRE(ok.exit_code == 0);

    // JSON lines: metadata first, then one record per outcome pair.
    std::istringstream lines(ok.output);
    std::string line;
    REQUIRE(std::getline(lines, line));
    const json meta = json::parse(line);
    CHECK(meta.at("seed") == 7);
    CHECK(meta.at("samples") == 1000);
    std::uint64_t total = 0;
    int rows = 0;
    while (std::getline(lines, line)) {
        total += json::parse(line).at("count").get<std::uint64_t>();
        ++rows;
    }
    CHECK(rows == 4);
    CHECK(total == 1000);

    const CliResult again = run_cli("sample " + eq3 + " --seed 7 --samples 1000 --format json");
    CHECK(again.output == ok.output);
}

TEST_CASE("file statements supply sample parameters and flags override them") {
    const auto path = write_temp("sampled.exp",
                                 "phase phi1 = pi/2\nseed 5\nsamples 200\n");
    const CliResult from_file = run_cli("sample " + path.string() + " --format csv");
    REQUIRE(from_file.exit_code == 0);

    const CliResult overridden =
        run_cli("sample " + path.string() + " --samples 300 --format csv");
    REQUIRE(overridden.exit_code == 0);
    CHECK(from_file.output != overridden.output);

    std::uint64_t total = 0;
    std::istringstream lines(overridden.output);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) total += std::stoull(line.substr(line.rfind(',') + 1));
    CHECK(total == 300);
}

TEST_CASE("chsh accepts pi-form flags and prints the expected score") {
    const CliResult result = run_cli("chsh --a 0 --a2 pi/2 --b -pi/4 --b2 pi/4 --format json");
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.output);
    CHECK(schema_check::validate(doc, load_schema(), "chsh").empty());
    CHECK(doc.at("s").get<double>() ==
          doctest::Approx(-2.0 * std::numbers::sqrt2_v<double>).epsilon(1e-9));
    CHECK(doc.at("local_bound").get<double>() == 2.0);

    CHECK(run_cli("chsh --a bogus --a2 0 --b 0 --b2 0").exit_code == 2);
}

TEST_CASE("frames on frames.exp reports the expected frames and phase sets") {
    const CliResult result = run_cli("frames " + experiments() + "/frames.exp --format json");
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.output);
    CHECK(schema_check::validate(doc, load_schema(), "frames").empty());
    CHECK(doc.at("frames").at("i1").at("velocity").get<double>() == 0.0);
    CHECK(doc.at("frames").at("i2").at("velocity").get<double>() == 0.75);
    CHECK(doc.at("available_phases").at("i1").size() == 1);
    CHECK(doc.at("available_phases").at("i2").size() == 2);
}

TEST_CASE("frames without a file uses the default geometry") {
    const CliResult result = run_cli("frames --format json");
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.output);
    CHECK(doc.at("frames").at("i2").at("velocity").get<double>() == 0.75);
}

TEST_CASE("ambiguity on frames.exp shows the frame-dependent outcome and flat marginals") {
    const CliResult result = run_cli("ambiguity " + experiments() + "/frames.exp --format json");
    REQUIRE(result.exit_code == 0);
    const json doc = json::parse(result.output);
    CHECK(schema_check::validate(doc, load_schema(), "ambiguity").empty());
    CHECK(doc.at("report").at("ambiguous").get<bool>());
    CHECK(doc.at("report").at("outcome_i1").get<int>() == 1);
    CHECK(doc.at("report").at("outcome_i2").get<int>() == -1);
    CHECK(doc.at("no_signaling").at("ok").get<bool>());
    CHECK(doc.at("no_signaling").at("max_deviation").get<double>() < 1e-9);
}

TEST_CASE("sweep command needs a sweep statement") {
    CHECK(run_cli("sweep " + experiments() + "/eq3.exp").exit_code == 2);

    const auto path = write_temp("sweep.exp", "detect R 3\nsweep phi1 0 2pi 8\n");
    const CliResult result = run_cli("sweep " + path.string() + " --format csv");
    REQUIRE(result.exit_code == 0);
    std::istringstream lines(result.output);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "phi1,phi3,e");
    int rows = 0;
    std::string first_row;
    for (std::string line; std::getline(lines, line);) {
        if (rows == 0) first_row = line;
        ++rows;
    }
    CHECK(rows == 8);
    CHECK(first_row.substr(0, 4) == "0,0,");
    CHECK(std::stod(first_row.substr(4)) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("--out writes the same bytes to a file") {
    const auto out_path = std::filesystem::temp_directory_path() / "pathsim_out.json";
    std::filesystem::remove(out_path);
    const std::string args = "run " + experiments() + "/eq3.exp --format json";
    const CliResult direct = run_cli(args);
    const CliResult to_file = run_cli(args + " --out " + out_path.string());
    REQUIRE(to_file.exit_code == 0);
    CHECK(to_file.output.empty());
    std::ifstream in(out_path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == direct.output);

    CHECK(run_cli(args + " --out /no/such/dir/out.json").exit_code == 3);
}

TEST_CASE("table output respects PATHSIM_NO_COLOR") {
    // Piped stdout is not a tty, so no styling either way; just confirm
    // the env var does not break anything and text renders.
    const CliResult result = run_cli("run " + experiments() + "/eq3.exp");
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.find("joint state") != std::string::npos);
    CHECK(result.output.find('\x1b') == std::string::npos);
}
