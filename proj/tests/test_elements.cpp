#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pathsim/elements.hpp"

using namespace pathsim;
using oracles::AngleStream;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2_v<double>;
const Complex kI{0.0, 1.0};

Mat2 scaled_identity(Complex z) {
    Mat2 m{};
    m.m[0][0] = m.m[1][1] = z;
    return m;
}

JointState run_stage1(const JointState& in, double phi) {
    const auto [left, right] = stage1_pipeline(phi);
    return right.apply(left.apply(in));
}

}  // namespace

TEST_CASE("beam-splitter matrix columns and unitarity") {
    const Mat2 u = beam_splitter_matrix();
    CHECK(std::abs(u.m[0][0] - Complex{kInvSqrt2, 0.0}) < 1e-15);
    CHECK(std::abs(u.m[1][0] - kI * kInvSqrt2) < 1e-15);
    CHECK(std::abs(u.m[0][1] - kI * kInvSqrt2) < 1e-15);
    CHECK(std::abs(u.m[1][1] - Complex{kInvSqrt2, 0.0}) < 1e-15);
    CHECK(max_abs_diff(mat_mul(u, conjugate_transpose(u)), identity2()) < 1e-15);
}

TEST_CASE("beam splitter squared swaps the modes with a factor i") {
    const Mat2 u = beam_splitter_matrix();
    const Mat2 u2 = mat_mul(u, u);
    Mat2 swap_i{};
    swap_i.m[0][1] = kI;
    swap_i.m[1][0] = kI;
    CHECK(max_abs_diff(u2, swap_i) < 1e-15);
}

TEST_CASE("restore matrix matches its printed form and inverts the beam splitter") {
    const Mat2 r = restore_matrix();
    // c -> (b + i a)/sqrt2: column 0 = (i, 1)/sqrt2 over rows (a, b).
    CHECK(std::abs(r.m[0][0] - kI * kInvSqrt2) < 1e-15);
    CHECK(std::abs(r.m[1][0] - Complex{kInvSqrt2, 0.0}) < 1e-15);
    CHECK(std::abs(r.m[0][1] - Complex{kInvSqrt2, 0.0}) < 1e-15);
    CHECK(std::abs(r.m[1][1] - kI * kInvSqrt2) < 1e-15);

    CHECK(max_abs_diff(mat_mul(r, conjugate_transpose(r)), identity2()) < 1e-15);
    CHECK(max_abs_diff(mat_mul(r, beam_splitter_matrix()), scaled_identity(kI)) < 1e-15);
}

TEST_CASE("restore after beam splitter preserves any 2-vector up to global phase") {
    std::mt19937_64 engine(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const Mat2 u = beam_splitter_matrix();
    const Mat2 r = restore_matrix();
    for (int trial = 0; trial < 100; ++trial) {
        std::array<Complex, 2> v{Complex{dist(engine), dist(engine)},
                                 Complex{dist(engine), dist(engine)}};
        const double norm = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
        if (norm < 1e-3) continue;
        v[0] /= norm;
        v[1] /= norm;

        std::array<Complex, 2> mid{u.m[0][0] * v[0] + u.m[0][1] * v[1],
                                   u.m[1][0] * v[0] + u.m[1][1] * v[1]};
        std::array<Complex, 2> back{r.m[0][0] * mid[0] + r.m[0][1] * mid[1],
                                    r.m[1][0] * mid[0] + r.m[1][1] * mid[1]};
        const Complex ip = std::conj(v[0]) * back[0] + std::conj(v[1]) * back[1];
        CHECK(std::abs(ip) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("stage 1 reproduces the printed joint output verbatim") {
    const JointState source = make_entangled_source();
    AngleStream angles(21);
    for (int i = 0; i < 100; ++i) {
        const double phi = angles.next();
        const JointState out = run_stage1(source, phi);
        CHECK(oracles::max_mismatch_exact(oracles::expected_eq3(phi), out) < 1e-12);
        CHECK(out.norm_squared() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("stage-1 probabilities at phi = 0 and phi = pi/2") {
    const JointState at0 = run_stage1(make_entangled_source(), 0.0);
    const JointProbs p0 = joint_probabilities(at0);
    CHECK(p0.at({'d', 'c'}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p0.at({'c', 'd'}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p0.at({'c', 'c'}) < 1e-30);
    CHECK(p0.at({'d', 'd'}) < 1e-30);

    const JointProbs p90 = joint_probabilities(run_stage1(make_entangled_source(), std::numbers::pi / 2));
    for (const auto& [key, p] : p90) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("restore undoes stage 1 up to a global phase") {
    const JointState source = make_entangled_source();
    const StagePipeline restore_l = restore_pipeline(Side::L);
    const StagePipeline restore_r = restore_pipeline(Side::R);

    const JointState back0 = restore_r.apply(restore_l.apply(run_stage1(source, 0.0)));
    CHECK(equal_up_to_global_phase(back0, source));

    AngleStream angles(22);
    for (int i = 0; i < 20; ++i) {
        const double phi = angles.next();
        const JointState back = restore_r.apply(restore_l.apply(run_stage1(source, phi)));
        const auto expected = JointState::from_amplitudes(oracles::expected_eq1(phi));
        CHECK(equal_up_to_global_phase(back, expected));
        // i * i = -1: the global phase is exactly -1.
        CHECK(oracles::max_mismatch_up_to_global_phase(oracles::expected_eq1(phi), back) < 1e-12);
    }

    CHECK_THROWS_WITH_AS(restore_l.apply(source), doctest::Contains("layer"),
                         std::invalid_argument);
}

TEST_CASE("full three-stage run matches the printed stage-3 output up to global phase") {
    const JointState source = make_entangled_source();
    AngleStream angles(23);
    for (int i = 0; i < 50; ++i) {
        const double phi = angles.next();
        const double phi3 = angles.next();

        JointState state = run_stage1(source, phi);
        state = restore_pipeline(Side::R).apply(restore_pipeline(Side::L).apply(state));
        const auto [stage3_l, stage3_r] = stage3_pipeline(phi3);
        state = stage3_r.apply(stage3_l.apply(state));

        CHECK(oracles::max_mismatch_up_to_global_phase(oracles::expected_eq5(phi, phi3), state) <
              1e-12);
    }
}

TEST_CASE("stage-3 probabilities when the phases cancel") {
    const JointState source = make_entangled_source();
    JointState state = run_stage1(source, std::numbers::pi / 4);
    state = restore_pipeline(Side::R).apply(restore_pipeline(Side::L).apply(state));
    const auto [stage3_l, stage3_r] = stage3_pipeline(-std::numbers::pi / 4);
    state = stage3_r.apply(stage3_l.apply(state));

    const JointProbs p = joint_probabilities(state);
    CHECK(p.at({'f', 'e'}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.at({'e', 'f'}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(p.at({'e', 'e'}) < 1e-24);
    CHECK(p.at({'f', 'f'}) < 1e-24);
}

TEST_CASE("stage 3 with zero added phase mirrors stage 1 under the letter map") {
    const JointState source = make_entangled_source();
    AngleStream angles(24);
    for (int i = 0; i < 20; ++i) {
        const double phi = angles.next();
        const JointProbs stage1 = joint_probabilities(run_stage1(source, phi));

        JointState state = run_stage1(source, phi);
        state = restore_pipeline(Side::R).apply(restore_pipeline(Side::L).apply(state));
        const auto [stage3_l, stage3_r] = stage3_pipeline(0.0);
        const JointProbs stage3 = joint_probabilities(stage3_r.apply(stage3_l.apply(state)));

        const auto relabel = [](char c) { return static_cast<char>(c + 2); };  // c->e, d->f
        for (const auto& [key, p] : stage1) {
            CHECK(stage3.at({relabel(key.l), relabel(key.r)}) == doctest::Approx(p).epsilon(1e-9));
        }
    }
}

TEST_CASE("pipelines reject layer-incompatible chains") {
    CHECK_THROWS_WITH_AS(
        StagePipeline(Side::L, {BeamSplitter{Side::L, Layer::Source, Layer::Stage1},
                                BeamSplitter{Side::L, Layer::Source, Layer::Stage3}}),
        doctest::Contains("not layer-compatible"), std::invalid_argument);
    CHECK_THROWS_AS(StagePipeline(Side::L, {BeamSplitter{Side::L, Layer::Source, Layer::Source}}),
                    std::invalid_argument);
    CHECK_THROWS_WITH_AS(StagePipeline(Side::L, {PhaseShift{mode_r('b'), 0.1}}),
                         doctest::Contains("wrong side"), std::invalid_argument);
    CHECK_THROWS_AS(StagePipeline(Side::L, {}), std::invalid_argument);
}

TEST_CASE("mode_matrix refuses equal layers") {
    CHECK_THROWS_AS(mode_matrix(beam_splitter_matrix(), Layer::Stage1, Layer::Stage1),
                    std::invalid_argument);
}
