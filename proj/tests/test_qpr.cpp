#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "qsflow/errors.hpp"
#include "qsflow/frames.hpp"
#include "qsflow/models.hpp"
#include "qsflow/qpr.hpp"

using namespace qsflow;

namespace {

CMat ket_bra(int d, int i, int j) {
    CMat m = CMat::Zero(d, d);
    m(i, j) = 1.0;
    return m;
}

Channel pure_decoherence_at(double g) {
    CMat sz(2, 2);
    sz << 1, 0, 0, -1;
    std::vector<CMat> kraus = {std::sqrt(0.5 * (1.0 + g)) * CMat::Identity(2, 2),
                               std::sqrt(0.5 * (1.0 - g)) * sz};
    return Channel::from_kraus(kraus);
}

} // namespace

TEST_CASE("rep_state on reference states") {
    FrameSet fs = build_frame(FrameKind::WoottersWigner, 2);

    QuasiState mixed = rep_state(CMat::Identity(2, 2) / 2.0, fs);
    for (int j = 0; j < 4; ++j) CHECK(mixed.q(j) == doctest::Approx(0.25).epsilon(1e-14));

    QuasiState zero = rep_state(ket_bra(2, 0, 0), fs);
    CHECK(zero.q(0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(zero.q(1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(zero.q(2)) < 1e-14);
    CHECK(std::abs(zero.q(3)) < 1e-14);
}

TEST_CASE("quasiprobabilities are normalized for random states in every frame") {
    std::mt19937_64 rng(52);
    for (auto [kind, d] : {std::pair{FrameKind::WoottersWigner, 2},
                           std::pair{FrameKind::GrossWigner, 3},
                           std::pair{FrameKind::SicPovm, 2},
                           std::pair{FrameKind::SicPovm, 3}}) {
        FrameSet fs = build_frame(kind, d);
        for (int trial = 0; trial < 20; ++trial) {
            QuasiState q = rep_state(oracle::random_density(d, rng), fs);
            CHECK(std::abs(q.q.sum() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("rep_state rejects invalid inputs") {
    FrameSet fs = build_frame(FrameKind::WoottersWigner, 2);
    CHECK_THROWS_AS(rep_state(CMat::Identity(3, 3) / 3.0, fs), DimensionMismatch);
    CHECK_THROWS_AS(rep_state(2.0 * ket_bra(2, 0, 0), fs), NotAState);
    CMat neg(2, 2);
    neg << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS(rep_state(neg, fs), NotAState);
}

TEST_CASE("reconstruct_state inverts rep_state") {
    std::mt19937_64 rng(53);
    FrameSet fs = build_frame(FrameKind::WoottersWigner, 2);

    QuasiState uniform{RVec::Constant(4, 0.25), fs.kind};
    CHECK((reconstruct_state(uniform, fs) - CMat::Identity(2, 2) / 2.0)
              .cwiseAbs()
              .maxCoeff() < 1e-14);

    RVec qz(4);
    qz << 0.5, 0.5, 0.0, 0.0;
    CHECK((reconstruct_state({qz, fs.kind}, fs) - ket_bra(2, 0, 0)).cwiseAbs().maxCoeff() <
          1e-14);

    for (auto [kind, d] : {std::pair{FrameKind::GrossWigner, 3},
                           std::pair{FrameKind::SicPovm, 2}}) {
        FrameSet frame = build_frame(kind, d);
        for (int trial = 0; trial < 20; ++trial) {
            CMat rho = oracle::random_density(d, rng);
            CMat back = reconstruct_state(rep_state(rho, frame), frame);
            CHECK((back - rho).cwiseAbs().maxCoeff() < 1e-10);
        }
    }

    QuasiState wrong{RVec::Constant(9, 1.0 / 9.0), fs.kind};
    CHECK_THROWS_AS(reconstruct_state(wrong, fs), DimensionMismatch);
}

TEST_CASE("rep_channel maps the identity channel to the identity matrix") {
    for (auto [kind, d] : {std::pair{FrameKind::WoottersWigner, 2},
                           std::pair{FrameKind::SicPovm, 3}}) {
        FrameSet fs = build_frame(kind, d);
        QuasiChannel s = rep_channel(Channel::identity(d), fs);
        CHECK((s.S - RMat::Identity(d * d, d * d)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("pure decoherence has the block quasi-stochastic form") {
    FrameSet fs = build_frame(FrameKind::WoottersWigner, 2);
    const double g = 0.37;
    QuasiChannel s = rep_channel(pure_decoherence_at(g), fs);

    RMat want(4, 4);
    want << 1 + g, 1 - g, 0, 0,
            1 - g, 1 + g, 0, 0,
            0, 0, 1 + g, 1 - g,
            0, 0, 1 - g, 1 + g;
    want *= 0.5;
    CHECK((s.S - want).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((s.S - s.S.transpose()).cwiseAbs().maxCoeff() < 1e-12); // self-dual map
}

TEST_CASE("columns always sum to one; unital channels are bistochastic") {
    std::mt19937_64 rng(54);
    for (auto [kind, d] : {std::pair{FrameKind::WoottersWigner, 2},
                           std::pair{FrameKind::GrossWigner, 3},
                           std::pair{FrameKind::SicPovm, 2}}) {
        FrameSet fs = build_frame(kind, d);
        for (int trial = 0; trial < 10; ++trial) {
            QuasiChannel s =
                rep_channel(Channel::from_kraus(oracle::random_kraus(d, 3, rng)), fs);
            for (int k = 0; k < fs.size(); ++k)
                CHECK(std::abs(s.S.col(k).sum() - 1.0) < 1e-12);
        }

        // Random mixtures of Weyl unitaries are unital.
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        RVec p(d * d);
        for (int a = 0; a < d * d; ++a) p(a) = unif(rng);
        p /= p.sum();
        CMat super = CMat::Zero(d * d, d * d);
        for (int a = 0; a < d * d; ++a) {
            CMat u = weyl_operator(d, a / d, a % d);
            super += p(a) * kron(u.conjugate(), u);
        }
        QuasiChannel s = rep_channel(Channel::from_superoperator(super, d), fs);
        for (int k = 0; k < fs.size(); ++k) {
            CHECK(std::abs(s.S.col(k).sum() - 1.0) < 1e-12);
            CHECK(std::abs(s.S.row(k).sum() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("rep_channel is functorial under composition") {
    std::mt19937_64 rng(55);
    for (auto [kind, d] : {std::pair{FrameKind::WoottersWigner, 2},
                           std::pair{FrameKind::SicPovm, 3}}) {
        FrameSet fs = build_frame(kind, d);
        for (int trial = 0; trial < 10; ++trial) {
            Channel e1 = Channel::from_kraus(oracle::random_kraus(d, 2, rng));
            Channel e2 = Channel::from_kraus(oracle::random_kraus(d, 3, rng));
            QuasiChannel s1 = rep_channel(e1, fs);
            QuasiChannel s2 = rep_channel(e2, fs);
            QuasiChannel s21 = rep_channel(e2.compose_after(e1), fs);
            CHECK((s21.S - s2.S * s1.S).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("rep_channel rejects non-trace-preserving maps") {
    FrameSet fs = build_frame(FrameKind::WoottersWigner, 2);
    std::vector<CMat> leaky = {0.9 * CMat::Identity(2, 2)};
    CHECK_THROWS_AS(rep_channel(Channel::from_kraus(leaky), fs), NotTracePreserving);
}

TEST_CASE("rep_effect reference values and POVM completeness") {
    FrameSet fs = build_frame(FrameKind::WoottersWigner, 2);

    QuasiEffect unit = rep_effect(CMat::Identity(2, 2), fs);
    for (int j = 0; j < 4; ++j) CHECK(unit.v(j) == doctest::Approx(1.0).epsilon(1e-14));

    QuasiEffect proj = rep_effect(ket_bra(2, 0, 0), fs);
    CHECK(proj.v(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(proj.v(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(proj.v(2)) < 1e-14);
    CHECK(std::abs(proj.v(3)) < 1e-14);

    std::mt19937_64 rng(56);
    for (auto [kind, d] : {std::pair{FrameKind::GrossWigner, 3},
                           std::pair{FrameKind::SicPovm, 2}}) {
        FrameSet frame = build_frame(kind, d);
        CMat m = oracle::random_effect(d, rng);
        QuasiEffect vm = rep_effect(m, frame);
        QuasiEffect vrest = rep_effect(CMat(CMat::Identity(d, d) - m), frame);
        for (int j = 0; j < frame.size(); ++j)
            CHECK(vm.v(j) + vrest.v(j) == doctest::Approx(1.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(rep_effect(CMat(2.0 * CMat::Identity(2, 2)), fs), NotAnEffect);
    CHECK_THROWS_AS(rep_effect(CMat(-0.1 * CMat::Identity(2, 2)), fs), NotAnEffect);
}

TEST_CASE("born rule agrees with the Hilbert-space picture") {
    FrameSet fs = build_frame(FrameKind::WoottersWigner, 2);
    QuasiEffect v = rep_effect(ket_bra(2, 0, 0), fs);
    QuasiChannel s = rep_channel(Channel::identity(2), fs);

    CHECK(born_probability(v, s, rep_state(ket_bra(2, 0, 0), fs)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(born_probability(v, s, rep_state(ket_bra(2, 1, 1), fs))) < 1e-12);

    std::mt19937_64 rng(57);
    for (auto [kind, d] : {std::pair{FrameKind::WoottersWigner, 2},
                           std::pair{FrameKind::GrossWigner, 3},
                           std::pair{FrameKind::SicPovm, 2},
                           std::pair{FrameKind::SicPovm, 3}}) {
        FrameSet frame = build_frame(kind, d);
        for (int trial = 0; trial < 100; ++trial) {
            CMat rho = oracle::random_density(d, rng);
            CMat m = oracle::random_effect(d, rng);
            Channel e = Channel::from_kraus(oracle::random_kraus(d, 2, rng));
            const double hilbert = (m * e.apply(rho)).trace().real();
            const double quasi = born_probability(rep_effect(m, frame),
                                                  rep_channel(e, frame),
                                                  rep_state(rho, frame));
            CHECK(std::abs(hilbert - quasi) < 1e-10);
        }
    }
}

TEST_CASE("born rule rejects mixed frames") {
    FrameSet wig = build_frame(FrameKind::WoottersWigner, 2);
    FrameSet sic = build_frame(FrameKind::SicPovm, 2);
    QuasiEffect v = rep_effect(CMat::Identity(2, 2), wig);
    QuasiChannel s = rep_channel(Channel::identity(2), sic);
    QuasiState q = rep_state(CMat::Identity(2, 2) / 2.0, sic);
    CHECK_THROWS_AS(born_probability(v, s, q), FrameMismatch);
}

TEST_CASE("unitary channels give orthogonal quasi-stochastic matrices") {
    std::mt19937_64 rng(58);
    for (auto [kind, d] : {std::pair{FrameKind::WoottersWigner, 2},
                           std::pair{FrameKind::GrossWigner, 3},
                           std::pair{FrameKind::SicPovm, 2},
                           std::pair{FrameKind::SicPovm, 3}}) {
        FrameSet fs = build_frame(kind, d);
        for (int trial = 0; trial < 20; ++trial) {
            CMat u = oracle::random_unitary(d, rng);
            QuasiChannel s = rep_channel(Channel::from_kraus({u}), fs);
            CHECK((s.S.transpose() * s.S - RMat::Identity(d * d, d * d))
                      .cwiseAbs()
                      .maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("generator representation and Kolmogorov negativity") {
    FrameSet fs = build_frame(FrameKind::WoottersWigner, 2);

    QuasiGenerator zero = rep_generator(CMat::Zero(4, 4), fs);
    CHECK(zero.L.cwiseAbs().maxCoeff() < 1e-14);
    CHECK(kolmogorov_negativity(zero) == 0.0);

    // Dephasing generator: off-diagonal entries equal gamma.
    for (double gamma : {0.8, -0.6}) {
        DynamicalModel m{ModelKind::PureDecoherence, 2,
                         DecoherenceFunction::exponential(1.0), {}};
        CMat liou = gamma * generator_superop_at(m, 0.0); // exponential rate is 1
        QuasiGenerator gen = rep_generator(liou, fs);
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(gen.L.col(k).sum()) < 1e-10);
        if (gamma > 0.0)
            CHECK(kolmogorov_negativity(gen) == 0.0);
        else
            CHECK(kolmogorov_negativity(gen) > 0.1);
    }

    CMat not_ta = CMat::Identity(4, 4);
    CHECK_THROWS_AS(rep_generator(not_ta, fs), NotTraceAnnihilating);
}
