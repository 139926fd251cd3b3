// Deterministic outcome models over a hidden variable: local strategy
// enumeration for the CHSH bound, remote-parameter-dependent outcome
// functions, the frame-relative set of remote phases such a function may
// see, and the no-signaling certificate they stand in tension with.
//
// The shipped nonlocal models are illustrative: nothing fixes how a remote
// parameter would enter the outcome function, so a small library of forms
// is provided and the frame-dependence is demonstrated on those.

#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pathsim/relativity.hpp"
#include "pathsim/scenario.hpp"

namespace pathsim {

// Model-internal hidden variable; the interpretation is the model's
// business. Values wrap into [0, 2pi).
class HiddenVariable {
  public:
    explicit HiddenVariable(double lambda);

    double value() const { return lambda_; }

  private:
    double lambda_;
};

// One deterministic local strategy: fixed +/-1 outcomes per setting index.
struct LocalDeterministicModel {
    std::array<int, 2> outcomes_l;
    std::array<int, 2> outcomes_r;

    // A1B1 + A1B2 + A2B1 - A2B2
    double chsh_value() const;
};

std::array<LocalDeterministicModel, 16> all_local_strategies();

// Max |S| over all 16 deterministic strategies; equals 2 for every choice
// of settings (deterministic outcomes cannot depend on them).
double enumerate_local_chsh_bound(std::array<double, 2> settings_l,
                                  std::array<double, 2> settings_r);

// Deterministic outcome function for photon L. `remote_phases` is the set
// of remote phase shifts available in the judging frame; `local_setting`
// is L's own phase (always 0 in this apparatus, kept for generality).
struct NonlocalOutcomeModel {
    std::string name;
    std::string description;
    std::function<int(double local_setting, std::span<const double> remote_phases, double lambda)>
        outcome;
};

// Ignores the remote set entirely: sign(cos(local + lambda)).
NonlocalOutcomeModel make_local_model();
// sign(cos(local + sum(remote) + lambda)) — the model used in the demos.
NonlocalOutcomeModel make_sum_threshold_model();
// sign(cos(local + weight*sum(remote) + lambda)).
NonlocalOutcomeModel make_weighted_model(double weight);

// Factory keyed by the names accepted in experiment files.
NonlocalOutcomeModel make_model(const std::string& name, std::span<const double> params);

// The remote phases photon R has met, judged at the moment L crosses BS1
// in the given frame: {} if R crossed neither beam splitter yet, {phi1}
// if it crossed BS1' only, {phi1, phi3} if it already crossed BS3'.
// A photon detected at stage 1 meets only the stage-1 configuration, so
// detect_r == 1 gives {phi1} in every frame.
std::vector<double> available_remote_phases(const Scenario& s, const BoostFrame& frame,
                                            const ApparatusGeometry& geometry);

struct AmbiguityReport {
    std::vector<double> phases_frame1;
    std::vector<double> phases_frame2;
    int outcome_frame1;
    int outcome_frame2;
    bool ambiguous;  // outcome_frame1 != outcome_frame2
};

// Evaluates the model's L outcome under each frame's available-phase set.
AmbiguityReport ambiguity_check(const NonlocalOutcomeModel& model, const Scenario& s,
                                const BoostFrame& frame1, const BoostFrame& frame2,
                                const ApparatusGeometry& geometry, HiddenVariable lambda);

struct NoSignalingCertificate {
    bool ok;               // max_deviation < 1e-9
    double max_deviation;  // max |P_L(outcome) - 1/2| over grids and scenarios
};

// Sweeps both phase grids over the stage-(1,1) and stage-(1,3) scenarios
// and bounds how far L's marginal ever moves from 1/2.
NoSignalingCertificate no_signaling_certificate(std::span<const double> phi1_grid,
                                                std::span<const double> phi3_grid);

}  // namespace pathsim
