// 1+1D Minkowski machinery (units with c = 1): boosts, interval
// classification, simultaneity frames, and the construction of the two
// frames in which photon R has crossed only the first beam splitter
// (frame I1) or already the stage-3 one (frame I2) at the moment photon L
// crosses its first beam splitter.

#pragma once

#include <map>
#include <string>

namespace pathsim {

struct SpacetimeEvent {
    double t = 0.0;
    double x = 0.0;
    std::string label;
};

class BoostFrame {
  public:
    // Requires |v| < 1.
    explicit BoostFrame(double v);

    double velocity() const { return v_; }
    double gamma() const;

  private:
    double v_;
};

// t' = gamma (t - v x), x' = gamma (x - v t).
SpacetimeEvent boost(const SpacetimeEvent& e, const BoostFrame& f);

enum class IntervalClass { Spacelike, Timelike, Lightlike };

struct IntervalResult {
    IntervalClass kind;
    double value;  // dt^2 - dx^2; lightlike iff |value| < 1e-12
};

IntervalResult interval_class(const SpacetimeEvent& e1, const SpacetimeEvent& e2);

// Velocity of the frame in which the two events are simultaneous.
// Requires a spacelike pair; identical coordinates give 0.
double simultaneity_velocity(const SpacetimeEvent& e1, const SpacetimeEvent& e2);

enum class Ordering { Before, Simultaneous, After };

// Temporal order of e1 relative to e2 in frame f (tolerance 1e-12 on the
// boosted times).
Ordering ordering(const SpacetimeEvent& e1, const SpacetimeEvent& e2, const BoostFrame& f);

const char* to_string(IntervalClass c);
const char* to_string(Ordering o);

inline constexpr const char* kEventLAtBs1 = "L@BS1";
inline constexpr const char* kEventRAtBs1 = "R@BS1'";
inline constexpr const char* kEventRAtBs3 = "R@BS3'";

// Labeled crossing events. L@BS1 and R@BS1' are always required; R@BS3'
// only when photon R continues to stage 3.
struct ApparatusGeometry {
    std::map<std::string, SpacetimeEvent> events;

    static ApparatusGeometry paper_default();

    bool has(const std::string& label) const { return events.contains(label); }
    const SpacetimeEvent& at(const std::string& label) const;
};

struct FramePair {
    BoostFrame i1;
    BoostFrame i2;
};

// I1: the frame in which R crosses BS1' exactly when L crosses BS1.
// I2: a frame in which R has already crossed BS3' at that moment, chosen
// as the midpoint between the BS3' simultaneity velocity and the light
// cone (sign toward R's position). Both orderings are verified directly
// before returning.
FramePair find_frames(const ApparatusGeometry& g);

}  // namespace pathsim
