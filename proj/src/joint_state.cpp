#include "pathsim/joint_state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pathsim {

namespace {

bool finite(const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

JointState JointState::from_amplitudes(AmplitudeMap amps) {
    if (amps.empty()) {
        throw std::invalid_argument("joint state needs at least one amplitude");
    }
    const Layer layer_l = layer_of(amps.begin()->first.l);
    const Layer layer_r = layer_of(amps.begin()->first.r);
    double norm2 = 0.0;
    for (const auto& [key, amp] : amps) {
        if (!finite(amp)) {
            throw std::invalid_argument("non-finite amplitude at " + to_string(key));
        }
        if (layer_of(key.l) != layer_l) {
            throw std::invalid_argument("L modes span more than one layer: " + to_string(key));
        }
        if (layer_of(key.r) != layer_r) {
            throw std::invalid_argument("R modes span more than one layer: " + to_string(key));
        }
        norm2 += std::norm(amp);
    }
    if (std::abs(norm2 - 1.0) > kNormTol) {
        throw std::invalid_argument("state not normalized: sum |amp|^2 = " + std::to_string(norm2));
    }
    return JointState(std::move(amps), layer_l, layer_r);
}

Complex JointState::amplitude(const ModePair& key) const {
    const auto it = amps_.find(key);
    return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

double JointState::norm_squared() const {
    double norm2 = 0.0;
    for (const auto& [key, amp] : amps_) norm2 += std::norm(amp);
    return norm2;
}

JointState make_entangled_source() {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2_v<double>;
    AmplitudeMap amps;
    amps[{'a', 'a'}] = inv_sqrt2;
    amps[{'b', 'b'}] = inv_sqrt2;
    return JointState::from_amplitudes(std::move(amps));
}

JointState apply_phase(const JointState& state, Mode target, double angle) {
    const Layer active = state.layer(target.side);
    if (layer_of(target.letter) != active) {
        throw std::invalid_argument("phase target " + to_string(target) + " is not in the active " +
                                    side_name(target.side) + " layer " + layer_name(active));
    }
    const Complex factor = std::polar(1.0, angle);
    AmplitudeMap amps = state.amplitudes();
    for (auto& [key, amp] : amps) {
        const char letter = target.side == Side::L ? key.l : key.r;
        if (letter == target.letter) amp *= factor;
    }
    return JointState::from_amplitudes(std::move(amps));
}

double ModeMatrix::unitarity_deviation() const {
    // (U U†)_jk = sum_i m[j][i] * conj(m[k][i])
    double dev = 0.0;
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            Complex e = m[j][0] * std::conj(m[k][0]) + m[j][1] * std::conj(m[k][1]);
            if (j == k) e -= 1.0;
            dev = std::max(dev, std::abs(e));
        }
    }
    return dev;
}

JointState apply_single_side_unitary(const JointState& state, Side side, const ModeMatrix& matrix) {
    if (const double dev = matrix.unitarity_deviation(); dev > kNormTol) {
        throw std::invalid_argument("matrix is not unitary (deviation " + std::to_string(dev) + ")");
    }
    if (state.layer(side) != matrix.in) {
        throw std::invalid_argument(std::string("matrix input layer ") + layer_name(matrix.in) +
                                    " does not match active " + side_name(side) + " layer " +
                                    layer_name(state.layer(side)));
    }
    const auto in_letters = letters_of(matrix.in);
    const auto out_letters = letters_of(matrix.out);

    AmplitudeMap out;
    for (const auto& [key, amp] : state.amplitudes()) {
        const char moving = side == Side::L ? key.l : key.r;
        const int in_index = moving == in_letters[0] ? 0 : 1;
        for (int out_index = 0; out_index < 2; ++out_index) {
            ModePair out_key = key;
            (side == Side::L ? out_key.l : out_key.r) = out_letters[out_index];
            out[out_key] += matrix.m[out_index][in_index] * amp;
        }
    }
    return JointState::from_amplitudes(std::move(out));
}

JointProbs joint_probabilities(const JointState& state) {
    JointProbs probs;
    for (const auto& [key, amp] : state.amplitudes()) probs[key] = std::norm(amp);
    return probs;
}

SideProbs marginal(const JointState& state, Side side) {
    SideProbs probs;
    for (const auto ls = letters_of(state.layer(side)); char letter : ls) probs[letter] = 0.0;
    for (const auto& [key, amp] : state.amplitudes()) {
        probs[side == Side::L ? key.l : key.r] += std::norm(amp);
    }
    return probs;
}

Complex overlap(const JointState& s1, const JointState& s2) {
    if (s1.layer(Side::L) != s2.layer(Side::L) || s1.layer(Side::R) != s2.layer(Side::R)) {
        throw std::invalid_argument("overlap of states on different layers: " +
                                    layer_name(s1.layer(Side::L)) + "x" + layer_name(s1.layer(Side::R)) +
                                    " vs " + layer_name(s2.layer(Side::L)) + "x" +
                                    layer_name(s2.layer(Side::R)));
    }
    Complex acc{0.0, 0.0};
    for (const auto& [key, amp] : s1.amplitudes()) acc += std::conj(amp) * s2.amplitude(key);
    return acc;
}

bool equal_up_to_global_phase(const JointState& s1, const JointState& s2, double tol) {
    if (s1.layer(Side::L) != s2.layer(Side::L) || s1.layer(Side::R) != s2.layer(Side::R)) {
        return false;
    }
    return std::abs(overlap(s1, s2)) >= 1.0 - tol;
}

JointState canonical_global_phase(const JointState& state) {
    Complex lead{0.0, 0.0};
    for (const auto& [key, amp] : state.amplitudes()) {
        if (std::abs(amp) > 1e-15) {
            lead = amp;
            break;
        }
    }
    if (lead == Complex{0.0, 0.0}) return state;
    const Complex rotation = std::conj(lead) / std::abs(lead);
    AmplitudeMap amps = state.amplitudes();
    for (auto& [key, amp] : amps) amp *= rotation;
    return JointState::from_amplitudes(std::move(amps));
}

}  // namespace pathsim
