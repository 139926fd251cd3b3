// Concrete optical elements and the per-side stage pipelines built from
// them: 50/50 beam splitters, their inverse (the restore step), and phase
// shifters.
//
// Beam-splitter convention: in1 -> (out1 + i*out2)/sqrt(2),
// in2 -> (i*out1 + out2)/sqrt(2) — the symmetric 50/50 convention whose
// inverse is the restore transformation below (their product is i times
// the identity). Mirrors are identity relabelings and carry no element.

#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "pathsim/joint_state.hpp"

namespace pathsim {

// Plain 2x2 complex matrix, m[row][col] with row = output index.
struct Mat2 {
    Complex m[2][2];
};

Mat2 beam_splitter_matrix();

// Inverse of the beam splitter up to a global phase i:
// in1 -> (i*out1 + out2)/sqrt(2), in2 -> (out1 + i*out2)/sqrt(2),
// written for the stage-1 outputs c,d feeding back into a,b.
Mat2 restore_matrix();

Mat2 mat_mul(const Mat2& a, const Mat2& b);
Mat2 conjugate_transpose(const Mat2& a);
Mat2 identity2();
double max_abs_diff(const Mat2& a, const Mat2& b);

// Attaches in/out layers to a raw matrix.
ModeMatrix mode_matrix(const Mat2& m, Layer in, Layer out);

struct PhaseShift {
    Mode target;
    double angle;  // radians
};

struct BeamSplitter {
    Side side;
    Layer in;
    Layer out;
};

struct Restore {
    Side side;  // always maps {c,d} back to {a,b}
};

using OpticalElement = std::variant<PhaseShift, BeamSplitter, Restore>;

Side element_side(const OpticalElement& e);
Layer element_input_layer(const OpticalElement& e);
Layer element_output_layer(const OpticalElement& e);

// An ordered element chain for one photon side. Layer compatibility
// (output layer of element k == input layer of element k+1) and side
// consistency are checked at construction.
class StagePipeline {
  public:
    StagePipeline(Side side, std::vector<OpticalElement> elements);

    JointState apply(const JointState& state) const;

    Side side() const { return side_; }
    Layer input_layer() const;
    Layer output_layer() const;
    const std::vector<OpticalElement>& elements() const { return elements_; }

  private:
    Side side_;
    std::vector<OpticalElement> elements_;
};

// Stage 1: L gets the beam splitter a,b -> c,d; R gets the phase shift phi
// on b' followed by the beam splitter a',b' -> c',d'.
std::pair<StagePipeline, StagePipeline> stage1_pipeline(double phi);

// The restore step {c,d} -> {a,b} on one side.
StagePipeline restore_pipeline(Side side);

// Stage 3: same shape as stage 1 with outputs e,f and phase phi3 on b'.
std::pair<StagePipeline, StagePipeline> stage3_pipeline(double phi3);

}  // namespace pathsim
