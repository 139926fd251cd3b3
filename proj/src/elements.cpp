#include "pathsim/elements.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pathsim {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2_v<double> / 2.0;
constexpr Complex kI{0.0, 1.0};

}  // namespace

Mat2 beam_splitter_matrix() {
    Mat2 u;
    u.m[0][0] = kInvSqrt2;
    u.m[0][1] = kI * kInvSqrt2;
    u.m[1][0] = kI * kInvSqrt2;
    u.m[1][1] = kInvSqrt2;
    return u;
}

Mat2 restore_matrix() {
    // c -> (b + i*a)/sqrt(2), d -> (i*b + a)/sqrt(2); rows ordered a,b.
    Mat2 u;
    u.m[0][0] = kI * kInvSqrt2;
    u.m[0][1] = kInvSqrt2;
    u.m[1][0] = kInvSqrt2;
    u.m[1][1] = kI * kInvSqrt2;
    return u;
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    Mat2 out;
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            out.m[j][k] = a.m[j][0] * b.m[0][k] + a.m[j][1] * b.m[1][k];
        }
    }
    return out;
}

Mat2 conjugate_transpose(const Mat2& a) {
    Mat2 out;
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) out.m[j][k] = std::conj(a.m[k][j]);
    }
    return out;
}

Mat2 identity2() {
    Mat2 out{};
    out.m[0][0] = out.m[1][1] = 1.0;
    return out;
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
    double dev = 0.0;
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) dev = std::max(dev, std::abs(a.m[j][k] - b.m[j][k]));
    }
    return dev;
}

ModeMatrix mode_matrix(const Mat2& m, Layer in, Layer out) {
    if (in == out) {
        throw std::invalid_argument("mode matrix needs distinct input and output layers");
    }
    ModeMatrix mm{in, out, {}};
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) mm.m[j][k] = m.m[j][k];
    }
    return mm;
}

Side element_side(const OpticalElement& e) {
    return std::visit([](const auto& el) {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, PhaseShift>) {
            return el.target.side;
        } else {
            return el.side;
        }
    }, e);
}

Layer element_input_layer(const OpticalElement& e) {
    return std::visit([](const auto& el) {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, PhaseShift>) {
            return layer_of(el.target.letter);
        } else if constexpr (std::is_same_v<T, BeamSplitter>) {
            return el.in;
        } else {
            return Layer::Stage1;
        }
    }, e);
}

Layer element_output_layer(const OpticalElement& e) {
    return std::visit([](const auto& el) {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, PhaseShift>) {
            return layer_of(el.target.letter);
        } else if constexpr (std::is_same_v<T, BeamSplitter>) {
            return el.out;
        } else {
            return Layer::Source;
        }
    }, e);
}

StagePipeline::StagePipeline(Side side, std::vector<OpticalElement> elements)
    : side_(side), elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw std::invalid_argument("pipeline needs at least one element");
    }
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (element_side(elements_[i]) != side_) {
            throw std::invalid_argument(std::string("element ") + std::to_string(i) +
                                        " acts on the wrong side for this " + side_name(side_) +
                                        " pipeline");
        }
        if (const auto& el = elements_[i]; std::holds_alternative<BeamSplitter>(el)) {
            const auto& bs = std::get<BeamSplitter>(el);
            if (bs.in == bs.out) {
                throw std::invalid_argument("beam splitter needs distinct layers");
            }
        }
        if (i > 0 && element_output_layer(elements_[i - 1]) != element_input_layer(elements_[i])) {
            throw std::invalid_argument("pipeline elements " + std::to_string(i - 1) + " and " +
                                        std::to_string(i) + " are not layer-compatible (" +
                                        layer_name(element_output_layer(elements_[i - 1])) + " vs " +
                                        layer_name(element_input_layer(elements_[i])) + ")");
        }
    }
}

Layer StagePipeline::input_layer() const { return element_input_layer(elements_.front()); }

Layer StagePipeline::output_layer() const { return element_output_layer(elements_.back()); }

JointState StagePipeline::apply(const JointState& state) const {
    JointState current = state;
    for (const auto& element : elements_) {
        current = std::visit([&](const auto& el) {
            using T = std::decay_t<decltype(el)>;
            if constexpr (std::is_same_v<T, PhaseShift>) {
                return apply_phase(current, el.target, el.angle);
            } else if constexpr (std::is_same_v<T, BeamSplitter>) {
                return apply_single_side_unitary(current, el.side,
                                                 mode_matrix(beam_splitter_matrix(), el.in, el.out));
            } else {
                return apply_single_side_unitary(current, el.side,
                                                 mode_matrix(restore_matrix(), Layer::Stage1, Layer::Source));
            }
        }, element);
    }
    return current;
}

std::pair<StagePipeline, StagePipeline> stage1_pipeline(double phi) {
    StagePipeline left(Side::L, {BeamSplitter{Side::L, Layer::Source, Layer::Stage1}});
    StagePipeline right(Side::R, {PhaseShift{mode_r('b'), phi},
                                  BeamSplitter{Side::R, Layer::Source, Layer::Stage1}});
    return {std::move(left), std::move(right)};
}

StagePipeline restore_pipeline(Side side) { return StagePipeline(side, {Restore{side}}); }

std::pair<StagePipeline, StagePipeline> stage3_pipeline(double phi3) {
    StagePipeline left(Side::L, {BeamSplitter{Side::L, Layer::Source, Layer::Stage3}});
    StagePipeline right(Side::R, {PhaseShift{mode_r('b'), phi3},
                                  BeamSplitter{Side::R, Layer::Source, Layer::Stage3}});
    return {std::move(left), std::move(right)};
}

}  // namespace pathsim
