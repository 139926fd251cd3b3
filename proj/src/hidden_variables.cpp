#include "pathsim/hidden_variables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace pathsim {

namespace {

int sign_of(double x) { return x >= 0.0 ? +1 : -1; }

double phase_sum(std::span<const double> phases) {
    return std::accumulate(phases.begin(), phases.end(), 0.0);
}

}  // namespace

HiddenVariable::HiddenVariable(double lambda) {
    if (!std::isfinite(lambda)) {
        throw std::invalid_argument("hidden variable must be finite");
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    lambda_ = std::fmod(lambda, two_pi);
    if (lambda_ < 0.0) lambda_ += two_pi;
}

double LocalDeterministicModel::chsh_value() const {
    const auto& a = outcomes_l;
    const auto& b = outcomes_r;
    return static_cast<double>(a[0] * b[0] + a[0] * b[1] + a[1] * b[0] - a[1] * b[1]);
}

std::array<LocalDeterministicModel, 16> all_local_strategies() {
    std::array<LocalDeterministicModel, 16> strategies;
    for (int bits = 0; bits < 16; ++bits) {
        const auto pm = [bits](int bit) { return (bits >> bit) & 1 ? +1 : -1; };
        strategies[bits] = {{pm(0), pm(1)}, {pm(2), pm(3)}};
    }
    return strategies;
}

double enumerate_local_chsh_bound(std::array<double, 2> /*settings_l*/,
                                  std::array<double, 2> /*settings_r*/) {
    double best = 0.0;
    for (const auto& strategy : all_local_strategies()) {
        best = std::max(best, std::abs(strategy.chsh_value()));
    }
    return best;
}

NonlocalOutcomeModel make_local_model() {
    return {"local", "sign(cos(local + lambda)); ignores remote phases",
            [](double local, std::span<const double>, double lambda) {
                return sign_of(std::cos(local + lambda));
            }};
}

NonlocalOutcomeModel make_sum_threshold_model() {
    return {"sum_threshold", "sign(cos(local + sum(remote) + lambda))",
            [](double local, std::span<const double> remote, double lambda) {
                return sign_of(std::cos(local + phase_sum(remote) + lambda));
            }};
}

NonlocalOutcomeModel make_weighted_model(double weight) {
    return {"weighted",
            "sign(cos(local + " + std::to_string(weight) + "*sum(remote) + lambda))",
            [weight](double local, std::span<const double> remote, double lambda) {
                return sign_of(std::cos(local + weight * phase_sum(remote) + lambda));
            }};
}

NonlocalOutcomeModel make_model(const std::string& name, std::span<const double> params) {
    if (name == "local") {
        return make_local_model();
    }
    if (name == "sum_threshold") {
        return make_sum_threshold_model();
    }
    if (name == "weighted") {
        if (params.size() != 1) {
            throw std::invalid_argument("model 'weighted' takes exactly one parameter");
        }
        return make_weighted_model(params[0]);
    }
    throw std::invalid_argument("unknown model '" + name + "'");
}

std::vector<double> available_remote_phases(const Scenario& s, const BoostFrame& frame,
                                            const ApparatusGeometry& geometry) {
    validate(s);
    const SpacetimeEvent& l_bs1 = geometry.at(kEventLAtBs1);
    const SpacetimeEvent& r_bs1 = geometry.at(kEventRAtBs1);

    if (s.detect_r == 1) {
        // R never continues past stage 1; its stage-3 crossing does not
        // exist and the stage-1 configuration is all it will ever meet.
        return {s.phi1};
    }

    const SpacetimeEvent& r_bs3 = geometry.at(kEventRAtBs3);
    const auto crossed = [&](const SpacetimeEvent& e) {
        return ordering(e, l_bs1, frame) != Ordering::After;
    };

    if (crossed(r_bs3)) {
        std::vector<double> phases{s.phi1, s.phi3};
        std::sort(phases.begin(), phases.end());
        phases.erase(std::unique(phases.begin(), phases.end()), phases.end());
        return phases;
    }
    if (crossed(r_bs1)) return {s.phi1};
    return {};
}

AmbiguityReport ambiguity_check(const NonlocalOutcomeModel& model, const Scenario& s,
                                const BoostFrame& frame1, const BoostFrame& frame2,
                                const ApparatusGeometry& geometry, HiddenVariable lambda) {
    AmbiguityReport report;
    report.phases_frame1 = available_remote_phases(s, frame1, geometry);
    report.phases_frame2 = available_remote_phases(s, frame2, geometry);
    // L's arms carry no phase elements, so its local setting is 0.
    report.outcome_frame1 = model.outcome(0.0, report.phases_frame1, lambda.value());
    report.outcome_frame2 = model.outcome(0.0, report.phases_frame2, lambda.value());
    report.ambiguous = report.outcome_frame1 != report.outcome_frame2;
    return report;
}

NoSignalingCertificate no_signaling_certificate(std::span<const double> phi1_grid,
                                                std::span<const double> phi3_grid) {
    if (phi1_grid.empty() || phi3_grid.empty()) {
        throw std::invalid_argument("no-signaling certificate needs nonempty grids");
    }
    double max_deviation = 0.0;
    for (const double phi1 : phi1_grid) {
        for (const double phi3 : phi3_grid) {
            for (const int detect_r : {1, 3}) {
                const auto probs = marginal(run_scenario({phi1, phi3, 1, detect_r}), Side::L);
                for (const auto& [letter, p] : probs) {
                    max_deviation = std::max(max_deviation, std::abs(p - 0.5));
                }
            }
        }
    }
    return {max_deviation < 1e-9, max_deviation};
}

}  // namespace pathsim
