#include "pathsim/relativity.hpp"

#include <cmath>
#include <stdexcept>

namespace pathsim {

namespace {

constexpr double kLightlikeTol = 1e-12;
constexpr double kSimultaneityTol = 1e-12;

}  // namespace

BoostFrame::BoostFrame(double v) : v_(v) {
    if (!(std::abs(v) < 1.0)) {
        throw std::domain_error("boost velocity must satisfy |v| < 1, got " + std::to_string(v));
    }
}

double BoostFrame::gamma() const { return 1.0 / std::sqrt(1.0 - v_ * v_); }

SpacetimeEvent boost(const SpacetimeEvent& e, const BoostFrame& f) {
    const double g = f.gamma();
    const double v = f.velocity();
    return {g * (e.t - v * e.x), g * (e.x - v * e.t), e.label};
}

IntervalResult interval_class(const SpacetimeEvent& e1, const SpacetimeEvent& e2) {
    const double dt = e2.t - e1.t;
    const double dx = e2.x - e1.x;
    const double value = dt * dt - dx * dx;
    if (std::abs(value) < kLightlikeTol) return {IntervalClass::Lightlike, value};
    return {value > 0.0 ? IntervalClass::Timelike : IntervalClass::Spacelike, value};
}

double simultaneity_velocity(const SpacetimeEvent& e1, const SpacetimeEvent& e2) {
    if (e1.t == e2.t && e1.x == e2.x) return 0.0;
    const auto interval = interval_class(e1, e2);
    if (interval.kind != IntervalClass::Spacelike) {
        throw std::invalid_argument("no simultaneity frame: events '" + e1.label + "' and '" +
                                    e2.label + "' are " + to_string(interval.kind) + "-separated");
    }
    // Spacelikeness guarantees |dt/dx| < 1; boosted dt' = gamma (dt - v dx) = 0.
    return (e2.t - e1.t) / (e2.x - e1.x);
}

Ordering ordering(const SpacetimeEvent& e1, const SpacetimeEvent& e2, const BoostFrame& f) {
    const double t1 = boost(e1, f).t;
    const double t2 = boost(e2, f).t;
    if (std::abs(t1 - t2) < kSimultaneityTol) return Ordering::Simultaneous;
    return t1 < t2 ? Ordering::Before : Ordering::After;
}

const char* to_string(IntervalClass c) {
    switch (c) {
        case IntervalClass::Spacelike: return "spacelike";
        case IntervalClass::Timelike: return "timelike";
        case IntervalClass::Lightlike: return "lightlike";
    }
    return "?";
}

const char* to_string(Ordering o) {
    switch (o) {
        case Ordering::Before: return "before";
        case Ordering::Simultaneous: return "simultaneous";
        case Ordering::After: return "after";
    }
    return "?";
}

ApparatusGeometry ApparatusGeometry::paper_default() {
    ApparatusGeometry g;
    g.events[kEventLAtBs1] = {0.0, 0.0, kEventLAtBs1};
    g.events[kEventRAtBs1] = {0.0, 10.0, kEventRAtBs1};
    g.events[kEventRAtBs3] = {5.0, 10.0, kEventRAtBs3};
    return g;
}

const SpacetimeEvent& ApparatusGeometry::at(const std::string& label) const {
    const auto it = events.find(label);
    if (it == events.end()) {
        throw std::invalid_argument("geometry is missing the event '" + label + "'");
    }
    return it->second;
}

FramePair find_frames(const ApparatusGeometry& g) {
    const SpacetimeEvent& l_bs1 = g.at(kEventLAtBs1);
    const SpacetimeEvent& r_bs1 = g.at(kEventRAtBs1);
    const SpacetimeEvent& r_bs3 = g.at(kEventRAtBs3);

    for (const SpacetimeEvent* e : {&r_bs1, &r_bs3}) {
        if (interval_class(l_bs1, *e).kind != IntervalClass::Spacelike) {
            throw std::invalid_argument("events '" + l_bs1.label + "' and '" + e->label +
                                        "' are not spacelike-separated; the frame construction "
                                        "needs both orderings to be frame-relative");
        }
    }

    const BoostFrame i1(simultaneity_velocity(l_bs1, r_bs1));

    const double v_sim3 = simultaneity_velocity(l_bs1, r_bs3);
    const double cone = r_bs3.x >= l_bs1.x ? 1.0 : -1.0;
    const BoostFrame i2((v_sim3 + cone) / 2.0);

    // Verify the construction by direct ordering, not by the formulas.
    if (ordering(r_bs1, l_bs1, i1) != Ordering::Simultaneous) {
        throw std::logic_error("frame I1 failed its simultaneity check");
    }
    if (ordering(r_bs3, l_bs1, i2) != Ordering::Before) {
        throw std::logic_error("frame I2 failed its ordering check");
    }
    return {i1, i2};
}

}  // namespace pathsim
