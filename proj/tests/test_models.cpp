#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "qsflow/errors.hpp"
#include "qsflow/frames.hpp"
#include "qsflow/models.hpp"
#include "qsflow/numerics.hpp"
#include "qsflow/qpr.hpp"

using namespace qsflow;

namespace {

DynamicalModel pure_dec(DecoherenceFunction g) {
    return {ModelKind::PureDecoherence, 2, g, {}};
}

DynamicalModel dissipation(DecoherenceFunction g) {
    return {ModelKind::Dissipation, 2, g, {}};
}

DynamicalModel random_unitary(int d, std::vector<RateFunction> rates) {
    DynamicalModel m{ModelKind::RandomUnitary, d, DecoherenceFunction::exponential(0.0), {}};
    m.rates.d = d;
    m.rates.gammas = std::move(rates);
    return m;
}

} // namespace

TEST_CASE("decoherence families start at 1 and stay bounded") {
    for (auto f : {DecoherenceFunction::exponential(1.3),
                   DecoherenceFunction::damped_oscillatory(0.5, 2.0),
                   DecoherenceFunction::jaynes_cummings(1.0, 5.0),
                   DecoherenceFunction::jaynes_cummings(1.0, 0.2)}) {
        CHECK(std::abs(decoherence_value(f, 0.0) - Cplx(1.0)) < 1e-14);
        for (double t = 0.0; t <= 12.0; t += 0.05)
            CHECK(std::abs(decoherence_value(f, t)) <= 1.0 + 1e-12);
    }
    CHECK_THROWS_AS(DecoherenceFunction::exponential(-1.0), InvalidParams);
    CHECK_THROWS_AS(DecoherenceFunction::jaynes_cummings(0.0, 1.0), InvalidParams);
}

TEST_CASE("analytic derivatives match finite differences") {
    const double h = 1e-6;
    for (auto f : {DecoherenceFunction::exponential(1.3),
                   DecoherenceFunction::damped_oscillatory(0.5, 2.0),
                   DecoherenceFunction::jaynes_cummings(1.0, 5.0),
                   DecoherenceFunction::jaynes_cummings(1.0, 0.2)}) {
        for (double t : {0.1, 0.7, 1.9, 4.2}) {
            const Cplx numeric =
                (decoherence_value(f, t + h) - decoherence_value(f, t - h)) / (2.0 * h);
            CHECK(std::abs(decoherence_derivative(f, t) - numeric) < 1e-7);
        }
    }
}

TEST_CASE("exponential family is Markovian with constant rate kappa") {
    auto f = DecoherenceFunction::exponential(1.7);
    for (double t : {0.0, 0.3, 1.0, 5.0}) {
        CHECK(dephasing_rate(f, t) == doctest::Approx(1.7).epsilon(1e-12));
        auto [gamma, shift] = dissipation_rates(f, t);
        CHECK(gamma == doctest::Approx(3.4).epsilon(1e-12));
        CHECK(std::abs(shift) < 1e-12);
    }
}

TEST_CASE("strong coupling crosses zero; the rate is singular there") {
    auto f = DecoherenceFunction::jaynes_cummings(1.0, 5.0);
    // bracket the first zero of G (t* ~ 1.26 for these parameters)
    double lo = 0.1, hi = 2.0;
    REQUIRE(decoherence_value(f, lo).real() > 0.0);
    REQUIRE(decoherence_value(f, hi).real() < 0.0);
    const double tstar = oracle::bisect(
        [&](double t) { return decoherence_value(f, t).real(); }, lo, hi);
    CHECK(std::abs(decoherence_value(f, tstar).real()) < 1e-12);
    CHECK_THROWS_AS(dephasing_rate(f, tstar), SingularDecoherence);

    // weak coupling stays positive: gamma >= 0 for all scanned t
    auto weak = DecoherenceFunction::jaynes_cummings(1.0, 0.2);
    for (double t = 0.05; t < 8.0; t += 0.05)
        CHECK(dephasing_rate(weak, t) >= -1e-12);
}

TEST_CASE("weyl operators") {
    CHECK((weyl_operator(2, 0, 0) - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((weyl_operator(3, 0, 0) - CMat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);

    CMat sz(2, 2), sx(2, 2), sy(2, 2);
    sz << 1, 0, 0, -1;
    sx << 0, 1, 1, 0;
    sy << 0, Cplx(0, -1), Cplx(0, 1), 0;
    CHECK((weyl_operator(2, 0, 1) - sz).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((weyl_operator(2, 1, 0) - sx).cwiseAbs().maxCoeff() < 1e-15);
    // sigma_y up to a global phase
    CHECK(std::abs(std::abs((sy.adjoint() * weyl_operator(2, 1, 1)).trace()) - 2.0) < 1e-14);

    CMat shift = CMat::Zero(3, 3);
    shift(0, 1) = shift(1, 2) = shift(2, 0) = 1.0; // sum_m |m><m+1|
    CHECK((weyl_operator(3, 1, 0) - shift).cwiseAbs().maxCoeff() < 1e-15);

    for (int d : {2, 3})
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) {
                CMat u = weyl_operator(d, k, l);
                CHECK((u * u.adjoint() - CMat::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-14);
            }

    CHECK_THROWS_AS(weyl_operator(3, 3, 0), IndexOutOfRange);
    CHECK_THROWS_AS(weyl_operator(2, 0, -1), IndexOutOfRange);
}

TEST_CASE("random unitary probabilities: start, normalization, ODE oracle") {
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    for (int d : {2, 3}) {
        const int nr = d * d - 1;
        std::vector<RateFunction> rates;
        for (int k = 0; k < nr; ++k) rates.push_back(RateFunction::constant(unif(rng)));
        DynamicalModel m = random_unitary(d, rates);

        RVec p0 = random_unitary_probabilities(m.rates, 0.0);
        CHECK(p0(0) == doctest::Approx(1.0).epsilon(1e-14));
        for (int a = 1; a < d * d; ++a) CHECK(std::abs(p0(a)) < 1e-14);

        for (double t : {0.2, 0.8, 2.0}) {
            RVec p = random_unitary_probabilities(m.rates, t);
            CHECK(std::abs(p.sum() - 1.0) < 1e-10);
        }
    }

    // Matrix-exponential solution of the master equation, constant rates.
    for (int trial = 0; trial < 25; ++trial) {
        RVec rates(3);
        for (int k = 0; k < 3; ++k) rates(k) = unif(rng);
        std::vector<RateFunction> rf;
        for (int k = 0; k < 3; ++k) rf.push_back(RateFunction::constant(rates(k)));
        DynamicalModel m = random_unitary(2, rf);
        for (double t : {0.3, 1.1}) {
            RVec got = random_unitary_probabilities(m.rates, t);
            RVec want = oracle::random_unitary_probs_by_ode(2, rates, t);
            CHECK((got - want).cwiseAbs().maxCoeff() < 1e-8);
        }
    }

    // Equal constant rates, the simplest closed-form case.
    std::vector<RateFunction> eq = {RateFunction::constant(0.4),
                                    RateFunction::constant(0.4),
                                    RateFunction::constant(0.4)};
    DynamicalModel m = random_unitary(2, eq);
    RVec got = random_unitary_probabilities(m.rates, 0.9);
    RVec want = oracle::random_unitary_probs_by_ode(2, RVec::Constant(3, 0.4), 0.9);
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("negative mixing probabilities raise the warning flag only") {
    std::vector<RateFunction> rates = {RateFunction::constant(1.0),
                                       RateFunction::constant(-2.0),
                                       RateFunction::constant(0.5)};
    DynamicalModel m = random_unitary(2, rates);
    bool warn = false;
    RVec p = random_unitary_probabilities(m.rates, 0.4, &warn);
    CHECK(warn);
    CHECK(p.minCoeff() < -1e-8);
    CHECK(std::abs(p.sum() - 1.0) < 1e-10);
}

TEST_CASE("channel_at starts at the identity for every model") {
    for (auto m : {pure_dec(DecoherenceFunction::jaynes_cummings(1.0, 5.0)),
                   dissipation(DecoherenceFunction::exponential(1.0)),
                   random_unitary(2, {RateFunction::constant(0.3),
                                      RateFunction::ramp(0.1, 0.2),
                                      RateFunction::damped_oscillatory(1.0, 0.5, 2.0)})}) {
        Channel ch = channel_at(m, 0.0);
        CHECK((ch.superoperator() - CMat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("channels are trace preserving and completely positive on a grid") {
    auto grid = make_grid(0.0, 3.0, 60);
    for (auto m : {pure_dec(DecoherenceFunction::jaynes_cummings(1.0, 5.0)),
                   pure_dec(DecoherenceFunction::damped_oscillatory(0.4, 2.0)),
                   dissipation(DecoherenceFunction::jaynes_cummings(1.0, 8.0)),
                   random_unitary(2, {RateFunction::constant(0.3),
                                      RateFunction::constant(0.2),
                                      RateFunction::constant(0.1)}),
                   random_unitary(3, {RateFunction::constant(0.3),
                                      RateFunction::constant(0.2),
                                      RateFunction::constant(0.1),
                                      RateFunction::constant(0.4),
                                      RateFunction::constant(0.0),
                                      RateFunction::constant(0.25),
                                      RateFunction::constant(0.15),
                                      RateFunction::constant(0.05)})}) {
        for (double t : grid) {
            Channel ch = channel_at(m, t);
            CHECK(ch.is_trace_preserving(1e-10));
            CHECK(ch.choi_min_eigenvalue() >= -1e-8);
        }
    }
}

TEST_CASE("dissipation contracts onto the ground state as G -> 0") {
    DynamicalModel m = dissipation(DecoherenceFunction::exponential(1.0));
    std::mt19937_64 rng(92);
    CMat rho = oracle::random_density(2, rng);
    CMat out = channel_at(m, 40.0).apply(rho); // G ~ 4e-18
    CMat ground = CMat::Zero(2, 2);
    ground(0, 0) = 1.0;
    CHECK((out - ground).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("all-zero rates give the identity map at every time") {
    DynamicalModel m = random_unitary(2, {RateFunction::constant(0.0),
                                          RateFunction::constant(0.0),
                                          RateFunction::constant(0.0)});
    for (double t : {0.0, 0.5, 2.0})
        CHECK((channel_at(m, t).superoperator() - CMat::Identity(4, 4))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
}

TEST_CASE("qubit random unitary quasi-channel carries the lambda spectrum") {
    FrameSet fs = build_frame(FrameKind::WoottersWigner, 2);
    std::vector<RateFunction> rates = {RateFunction::constant(0.5),
                                       RateFunction::constant(0.3),
                                       RateFunction::constant(-0.2)};
    DynamicalModel m = random_unitary(2, rates);
    const double t = 0.7;
    QuasiChannel s = rep_channel(channel_at(m, t), fs);

    // Expected eigenvalues exp(sum_k (H_bk - 1) Gamma_k) with H the real
    // 4x4 Hadamard of the Weyl commutation phases.
    RVec gi(3);
    for (int k = 0; k < 3; ++k) gi(k) = rates[k](0.0) * t;
    const double h[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
    std::vector<double> want;
    for (int b = 0; b < 4; ++b) {
        double e = 0.0;
        for (int k = 1; k < 4; ++k) e += (h[b][k] - 1.0) * gi(k - 1);
        want.push_back(std::exp(e));
    }
    std::sort(want.begin(), want.end(), std::greater<>());

    Eigen::EigenSolver<RMat> es(s.S);
    std::vector<double> got(4);
    for (int i = 0; i < 4; ++i) got[i] = es.eigenvalues()(i).real();
    for (int i = 0; i < 4; ++i) CHECK(std::abs(es.eigenvalues()(i).imag()) < 1e-10);
    std::sort(got.begin(), got.end(), std::greater<>());
    for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-8));
}

TEST_CASE("pure decoherence is represented non-negatively") {
    for (auto kind : {FrameKind::WoottersWigner, FrameKind::SicPovm}) {
        FrameSet fs = build_frame(kind, 2);
        for (auto m : {pure_dec(DecoherenceFunction::jaynes_cummings(1.0, 5.0)),
                       pure_dec(DecoherenceFunction::damped_oscillatory(0.4, 2.0)),
                       pure_dec(DecoherenceFunction::exponential(0.7))}) {
            for (double t = 0.0; t <= 4.0; t += 0.08) {
                QuasiChannel s = rep_channel(channel_at(m, t), fs);
                CHECK(s.S.minCoeff() >= -1e-12);
            }
        }
    }
}

TEST_CASE("the dissipation representation carries a negative entry for 0 < G < 1") {
    // One coherence-sector entry equals (G^2 - G)/2, so non-negativity fails
    // as soon as the populations actually decay; at G = 0 and G = 1 it closes.
    FrameSet fs = build_frame(FrameKind::WoottersWigner, 2);
    DynamicalModel m = dissipation(DecoherenceFunction::exponential(0.7));
    const double g = decoherence_value(m.g, 0.96).real();
    QuasiChannel s = rep_channel(channel_at(m, 0.96), fs);
    CHECK(s.S.minCoeff() == doctest::Approx(0.5 * (g * g - g)).epsilon(1e-10));

    CHECK(rep_channel(channel_at(m, 0.0), fs).S.minCoeff() >= -1e-12);
    CHECK(rep_channel(channel_at(m, 40.0), fs).S.minCoeff() >= -1e-12);
}

TEST_CASE("channels_on_grid matches pointwise channel_at") {
    DynamicalModel m = random_unitary(2, {RateFunction::damped_oscillatory(1.0, 0.5, 3.0),
                                          RateFunction::ramp(0.2, -0.1),
                                          RateFunction::constant(0.4)});
    auto grid = make_grid(0.0, 2.0, 40);
    auto channels = channels_on_grid(m, grid);
    for (std::size_t i = 0; i < grid.size(); i += 5) {
        Channel direct = channel_at(m, grid[i]);
        CHECK((channels[i].superoperator() - direct.superoperator()).cwiseAbs().maxCoeff() <
              1e-9);
    }
}

TEST_CASE("analytic generators satisfy the time-local master equation") {
    // L_t = (dLambda/dt) Lambda^{-1}, with the derivative by central differences.
    const double h = 1e-5;
    for (auto m : {pure_dec(DecoherenceFunction::jaynes_cummings(1.0, 5.0)),
                   dissipation(DecoherenceFunction::exponential(0.8)),
                   random_unitary(2, {RateFunction::constant(0.5),
                                      RateFunction::ramp(0.0, 0.3),
                                      RateFunction::damped_oscillatory(0.7, 0.2, 2.0)})}) {
        for (double t : {0.2, 0.6, 1.1}) {
            CMat plus = channel_at(m, t + h).superoperator();
            CMat minus = channel_at(m, t - h).superoperator();
            CMat deriv = (plus - minus) / (2.0 * h);
            CMat numeric = deriv * channel_at(m, t).superoperator().inverse();
            CHECK((numeric - generator_superop_at(m, t)).cwiseAbs().maxCoeff() < 1e-6);
        }
    }
}

TEST_CASE("generator negativity across the three models") {
    FrameSet fs = build_frame(FrameKind::WoottersWigner, 2);

    // Dephasing: negativity appears exactly with a negative rate.
    DynamicalModel jc = pure_dec(DecoherenceFunction::jaynes_cummings(1.0, 5.0));
    QuasiGenerator early = rep_generator(generator_superop_at(jc, 0.3), fs);
    CHECK(kolmogorov_negativity(early) < 1e-12); // gamma > 0 before the first zero

    // Dissipation with a plain exponential: Markovian yet negative entries.
    DynamicalModel amp = dissipation(DecoherenceFunction::exponential(1.0));
    QuasiGenerator gen = rep_generator(generator_superop_at(amp, 0.5), fs);
    CHECK(kolmogorov_negativity(gen) > 0.1);

    // Qubit random unitary: off-diagonal entries are the rates themselves.
    DynamicalModel ru = random_unitary(2, {RateFunction::constant(0.7),
                                           RateFunction::constant(0.2),
                                           RateFunction::constant(-0.4)});
    QuasiGenerator gru = rep_generator(generator_superop_at(ru, 0.0), fs);
    CHECK(kolmogorov_negativity(gru) > 0.1);
}
