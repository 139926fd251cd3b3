// Structured output records for the CLI: one JSON document per command
// plus CSV and human-table renderings of the same data. Rendering is kept
// separate from the engine so identical inputs give byte-identical output.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pathsim/dsl.hpp"
#include "pathsim/hidden_variables.hpp"
#include "pathsim/relativity.hpp"
#include "pathsim/scenario.hpp"

namespace pathsim {

inline constexpr const char* kVersion = "0.1.0";

// Shortest decimal text that round-trips the value ("-0" collapses to "0").
std::string format_real(double v);

// A full command result; `doc` is the canonical JSON form (object keys are
// emitted sorted, so serialization is deterministic).
struct OutputRecord {
    nlohmann::json doc;
};

nlohmann::json scenario_json(const Scenario& s);

OutputRecord run_record(const std::string& input, const Scenario& s, const JointState& state);
OutputRecord sweep_record(const std::string& input, const Scenario& s, const dsl::SweepStmt& sweep,
                          const CorrelationTable& table);
OutputRecord sample_record(const std::string& input, const Scenario& s, std::uint64_t seed,
                           std::uint64_t samples, const std::vector<DetectionRecord>& records);
OutputRecord chsh_record(double a, double a2, double b, double b2);
OutputRecord frames_record(const std::string& input, const Scenario& s,
                           const ApparatusGeometry& geometry, const FramePair& frames);
OutputRecord ambiguity_record(const std::string& input, const Scenario& s, const FramePair& frames,
                              const NonlocalOutcomeModel& model, double lambda,
                              const AmbiguityReport& report, const NoSignalingCertificate& cert,
                              std::size_t cert_grid_points);

// JSON rendering: a single compact object line for most commands; the
// sample command becomes JSON lines (metadata object first, then one
// detection record per line).
std::string render_json(const OutputRecord& record);

// Flat CSV: comma separator, '.' decimal point, header row, LF endings.
std::string render_csv(const OutputRecord& record);

// Human-readable table; ANSI styling only when `color` is true.
std::string render_table(const OutputRecord& record, bool color);

}  // namespace pathsim
