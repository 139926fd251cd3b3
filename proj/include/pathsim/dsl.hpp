// The experiment description language: a line-oriented text format for
// phases, detection stages, geometry events, model selection, sweeps, and
// run parameters.
//
//   # comment
//   phase phi1 = pi/2
//   phase phi3 = -pi/4
//   detect L 1
//   detect R 3
//   geometry L@BS1 0 0
//   model sum_threshold
//   sweep phi1 0 2pi 360
//   seed 42
//   samples 100000
//
// One statement per line. Numbers are either decimal literals or rational
// multiples of pi ("pi", "2pi", "pi/2", "-3pi/4"); pi-rationals stay
// symbolic in the AST so canonical printing is exact. Parsing collects
// every error instead of stopping at the first.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pathsim/relativity.hpp"
#include "pathsim/scenario.hpp"

namespace pathsim::dsl {

struct SourceText {
    std::string text;
    std::string origin;  // file name for error reporting
};

// A number literal: a reduced rational multiple of pi, or a plain decimal.
class PhaseValue {
  public:
    PhaseValue() = default;

    static PhaseValue pi_rational(long long num, long long den);
    static PhaseValue decimal(double value);

    bool is_pi_rational() const { return pi_rational_; }
    long long num() const { return num_; }
    long long den() const { return den_; }

    double radians() const;
    std::string to_string() const;

    friend bool operator==(const PhaseValue&, const PhaseValue&) = default;

  private:
    bool pi_rational_ = false;
    long long num_ = 0;
    long long den_ = 1;
    double decimal_ = 0.0;
};

// Accepts decimal literals (including exponent form) and pi-rationals.
std::optional<PhaseValue> parse_number(std::string_view token);

struct GeometryStmt {
    std::string label;
    double t = 0.0;
    double x = 0.0;

    friend bool operator==(const GeometryStmt&, const GeometryStmt&) = default;
};

struct ModelStmt {
    std::string name;
    std::vector<double> params;

    friend bool operator==(const ModelStmt&, const ModelStmt&) = default;
};

struct SweepStmt {
    std::string target;  // "phi1" or "phi3"
    PhaseValue from;
    PhaseValue to;
    std::uint32_t steps = 1;

    friend bool operator==(const SweepStmt&, const SweepStmt&) = default;
};

// Validated, order-normalized form: one slot per statement kind, geometry
// sorted by label. print_canonical followed by parse reproduces it exactly.
struct ExperimentAst {
    std::optional<PhaseValue> phi1;
    std::optional<PhaseValue> phi3;
    std::optional<int> detect_l;
    std::optional<int> detect_r;
    std::vector<GeometryStmt> geometry;
    std::optional<ModelStmt> model;
    std::optional<SweepStmt> sweep;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;

    friend bool operator==(const ExperimentAst&, const ExperimentAst&) = default;
};

struct ParseError {
    int line = 1;    // 1-based
    int column = 1;  // 1-based, start of the offending token
    std::string message;
    std::string token;
};

struct ParseResult {
    std::optional<ExperimentAst> ast;  // set iff errors is empty
    std::vector<ParseError> errors;

    bool ok() const { return errors.empty(); }
};

ParseResult parse(const SourceText& src);

// Deterministic statement order and formatting; parse(print_canonical(a))
// yields a again for any validated AST.
std::string print_canonical(const ExperimentAst& ast);

struct RunParams {
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t samples = 0;
    bool samples_set = false;
    std::optional<SweepStmt> sweep;
};

struct CompiledExperiment {
    Scenario scenario;
    ApparatusGeometry geometry;
    ModelStmt model;
    RunParams run;
};

class CompileError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Applies the defaults (phases 0, both detections at stage 1, the
// paper-default geometry preset, model sum_threshold, seed 0, samples 0)
// and cross-checks statements against each other.
CompiledExperiment compile(const ExperimentAst& ast);

// Grid points from + k*(to-from)/steps for k in [0, steps): the endpoint
// is excluded so full-turn sweeps hit 0 and pi exactly.
std::vector<double> sweep_grid(const SweepStmt& sweep);

}  // namespace pathsim::dsl
