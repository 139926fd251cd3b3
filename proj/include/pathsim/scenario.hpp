// Full experiments composed from the experimenters' choices: the two
// phases and the per-photon detection stage. Produces analytic joint
// states, correlation values, CHSH scores, and seeded detection counts.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pathsim/elements.hpp"

namespace pathsim {

// Both phase shifters sit on R's b' arm (stage 1 carries phi1, stage 3
// carries phi3); L's arms have no phase elements. Any combination of
// detection stages is allowed.
struct Scenario {
    double phi1 = 0.0;
    double phi3 = 0.0;
    int detect_l = 1;  // 1 or 3
    int detect_r = 1;  // 1 or 3

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

void validate(const Scenario& s);

// Analytic joint state at the chosen detection surfaces.
JointState run_scenario(const Scenario& s);

// +1 for the first letter of a layer (c, e and their primed partners),
// -1 for the second (d, f).
int outcome_sign(char letter);

// E = sum sign(L)*sign(R)*P over the joint outcomes. For scenarios where
// both phases are met this evaluates to -cos(phi1 + phi3).
double correlation(const Scenario& s);

// S = E(a,b) + E(a,b2) + E(a2,b) - E(a2,b2) on the mixed (1,3) scenario,
// with a,a2 the two phi1 settings and b,b2 the two phi3 settings.
double chsh(double a, double a2, double b, double b2);

struct DetectionRecord {
    char outcome_l;
    char outcome_r;
    std::uint64_t count;

    friend bool operator==(const DetectionRecord&, const DetectionRecord&) = default;
};

// n seeded draws from the scenario's joint distribution, aggregated per
// outcome pair in lexicographic order (zero-count outcomes included).
// Sampling is inverse-CDF over the outcome table in that fixed order, so
// identical (seed, scenario, n) gives identical records.
std::vector<DetectionRecord> sample_events(const Scenario& s, std::uint64_t n, std::uint64_t seed);

struct CorrelationRow {
    double phi1;
    double phi3;
    double e;
};

using CorrelationTable = std::vector<CorrelationRow>;

enum class SweepTarget { Phi1, Phi3 };

// One row per grid value, substituting the grid value for the swept phase
// and keeping the other phase fixed from `base`.
CorrelationTable sweep(const Scenario& base, SweepTarget target, std::span<const double> grid);

}  // namespace pathsim
