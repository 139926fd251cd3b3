// Normalized two-photon joint states over path modes, with the evolution
// and measurement-probability primitives everything else is built on.
//
// Amplitudes are stored as a sparse map keyed by (L letter, R letter); the
// active layer may differ between the sides (mixed detection leaves L on
// stage-1 modes while R sits on stage-3 modes). All values are immutable;
// every operation returns a fresh state.

#pragma once

#include <complex>
#include <map>

#include "pathsim/modes.hpp"

namespace pathsim {

using Complex = std::complex<double>;

// Tolerances: 1e-12 for plain arithmetic identities, 1e-9 for accumulated
// pipelines.
inline constexpr double kTightTol = 1e-12;
inline constexpr double kNormTol = 1e-9;

using AmplitudeMap = std::map<ModePair, Complex>;

// Probability tables (each sums to 1 within kNormTol).
using JointProbs = std::map<ModePair, double>;
using SideProbs = std::map<char, double>;

class JointState {
  public:
    // Validates finiteness, per-side layer consistency, and normalization.
    static JointState from_amplitudes(AmplitudeMap amps);

    const AmplitudeMap& amplitudes() const { return amps_; }

    // Zero for keys not present in the map.
    Complex amplitude(const ModePair& key) const;

    Layer layer(Side side) const { return side == Side::L ? layer_l_ : layer_r_; }

    double norm_squared() const;

  private:
    JointState(AmplitudeMap amps, Layer layer_l, Layer layer_r)
        : amps_(std::move(amps)), layer_l_(layer_l), layer_r_(layer_r) {}

    AmplitudeMap amps_;
    Layer layer_l_;
    Layer layer_r_;
};

// 2^{-1/2}(|a>|a'> + |b>|b'>).
JointState make_entangled_source();

// Multiplies every amplitude whose key matches `target` on its side by
// e^{i*angle} (radians). The target letter must lie in the state's active
// layer for that side.
JointState apply_phase(const JointState& state, Mode target, double angle);

// A 2x2 transformation from one layer's mode pair to another's,
// m[out][in] over the layers' letters in alphabetical order.
struct ModeMatrix {
    Layer in;
    Layer out;
    Complex m[2][2];

    // max |(U U†)_jk - δ_jk|
    double unitarity_deviation() const;
    bool is_unitary(double tol = kNormTol) const { return unitarity_deviation() <= tol; }
};

// Applies `matrix` to the chosen side; the active layer on that side becomes
// matrix.out. Rejects non-unitary matrices and layer mismatches.
JointState apply_single_side_unitary(const JointState& state, Side side, const ModeMatrix& matrix);

// Born rule: probability = |amplitude|^2 per joint outcome.
JointProbs joint_probabilities(const JointState& state);

// Sums joint probabilities over the other side.
SideProbs marginal(const JointState& state, Side side);

// Inner product <s1|s2>. Both states must have the same layer support.
Complex overlap(const JointState& s1, const JointState& s2);

// True iff |<s1|s2>| >= 1 - tol. States on different layers compare false.
bool equal_up_to_global_phase(const JointState& s1, const JointState& s2, double tol = kTightTol);

// Rotates the global phase so the first nonzero amplitude in key order is
// real and positive. Used for printing; physics never depends on it.
JointState canonical_global_phase(const JointState& state);

}  // namespace pathsim
