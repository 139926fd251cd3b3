#include "pathsim/scenario.hpp"

#include <stdexcept>
#include <string>

#include "pathsim/rng.hpp"

namespace pathsim {

void validate(const Scenario& s) {
    const auto check_stage = [](int stage, const char* which) {
        if (stage != 1 && stage != 3) {
            throw std::invalid_argument(std::string(which) + " detection stage must be 1 or 3, got " +
                                        std::to_string(stage));
        }
    };
    check_stage(s.detect_l, "L");
    check_stage(s.detect_r, "R");
}

JointState run_scenario(const Scenario& s) {
    validate(s);

    // Per-side element chain: stage 1, then (if the photon continues)
    // restore and stage 3. A photon detected at stage 1 never meets the
    // later elements on its side.
    const auto [stage1_l, stage1_r] = stage1_pipeline(s.phi1);
    const auto [stage3_l, stage3_r] = stage3_pipeline(s.phi3);

    const auto extend = [](std::vector<OpticalElement> base, const StagePipeline& restore,
                           const StagePipeline& stage3) {
        base.insert(base.end(), restore.elements().begin(), restore.elements().end());
        base.insert(base.end(), stage3.elements().begin(), stage3.elements().end());
        return base;
    };

    std::vector<OpticalElement> left = stage1_l.elements();
    if (s.detect_l == 3) left = extend(std::move(left), restore_pipeline(Side::L), stage3_l);
    std::vector<OpticalElement> right = stage1_r.elements();
    if (s.detect_r == 3) right = extend(std::move(right), restore_pipeline(Side::R), stage3_r);

    const JointState source = make_entangled_source();
    return StagePipeline(Side::R, std::move(right))
        .apply(StagePipeline(Side::L, std::move(left)).apply(source));
}

int outcome_sign(char letter) {
    switch (letter) {
        case 'c':
        case 'e': return +1;
        case 'd':
        case 'f': return -1;
        default: throw std::invalid_argument(std::string("no outcome sign for mode '") + letter + "'");
    }
}

double correlation(const Scenario& s) {
    double e = 0.0;
    for (const auto& [key, p] : joint_probabilities(run_scenario(s))) {
        e += outcome_sign(key.l) * outcome_sign(key.r) * p;
    }
    return e;
}

double chsh(double a, double a2, double b, double b2) {
    const auto e = [](double phi1, double phi3) {
        return correlation(Scenario{phi1, phi3, 1, 3});
    };
    return e(a, b) + e(a, b2) + e(a2, b) - e(a2, b2);
}

std::vector<DetectionRecord> sample_events(const Scenario& s, std::uint64_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_events needs n >= 1");

    const JointProbs probs = joint_probabilities(run_scenario(s));
    std::vector<ModePair> outcomes;
    std::vector<double> cdf;
    double acc = 0.0;
    for (const auto& [key, p] : probs) {
        outcomes.push_back(key);
        acc += p;
        cdf.push_back(acc);
    }

    std::vector<std::uint64_t> counts(outcomes.size(), 0);
    SeededRng rng(seed);
    for (std::uint64_t draw = 0; draw < n; ++draw) {
        const double u = rng.uniform01();
        std::size_t pick = outcomes.size();
        for (std::size_t i = 0; i < cdf.size(); ++i) {
            if (u < cdf[i]) {
                pick = i;
                break;
            }
        }
        if (pick == outcomes.size()) {
            // u landed in the float residue above the accumulated total;
            // assign to the last outcome with nonzero probability.
            for (std::size_t i = outcomes.size(); i-- > 0;) {
                if (probs.at(outcomes[i]) > 0.0) {
                    pick = i;
                    break;
                }
            }
        }
        ++counts[pick];
    }

    std::vector<DetectionRecord> records;
    records.reserve(outcomes.size());
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        records.push_back({outcomes[i].l, outcomes[i].r, counts[i]});
    }
    return records;
}

CorrelationTable sweep(const Scenario& base, SweepTarget target, std::span<const double> grid) {
    if (grid.empty()) throw std::invalid_argument("sweep grid must be nonempty");
    CorrelationTable table;
    table.reserve(grid.size());
    for (const double value : grid) {
        Scenario s = base;
        (target == SweepTarget::Phi1 ? s.phi1 : s.phi3) = value;
        table.push_back({s.phi1, s.phi3, correlation(s)});
    }
    return table;
}

}  // namespace pathsim
