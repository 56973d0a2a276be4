#include "qsflow/models.hpp"

#include <cmath>
#include <numbers>

#include "qsflow/errors.hpp"
#include "qsflow/numerics.hpp"

namespace qsflow {

namespace {

constexpr double kGammaQuadTol = 1e-10;
constexpr double kGZeroTol = 1e-12;
constexpr double kChoiTol = -1e-8;

Cplx jc_delta(double lambda, double gamma0) {
    return std::sqrt(Cplx(lambda * lambda - 2.0 * gamma0 * lambda, 0.0));
}

CMat sigma_z() {
    CMat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

} // namespace

DecoherenceFunction DecoherenceFunction::exponential(double kappa) {
    if (kappa < 0.0) throw InvalidParams("exponential family requires kappa >= 0");
    DecoherenceFunction f;
    f.family = GFamily::Exponential;
    f.kappa = kappa;
    return f;
}

DecoherenceFunction DecoherenceFunction::damped_oscillatory(double kappa, double omega) {
    if (kappa < 0.0 || omega < 0.0)
        throw InvalidParams("damped oscillatory family requires kappa, omega >= 0");
    DecoherenceFunction f;
    f.family = GFamily::DampedOscillatory;
    f.kappa = kappa;
    f.omega = omega;
    return f;
}

DecoherenceFunction DecoherenceFunction::jaynes_cummings(double lambda, double gamma0) {
    if (lambda <= 0.0 || gamma0 < 0.0)
        throw InvalidParams("Jaynes-Cummings family requires lambda > 0 and gamma0 >= 0");
    DecoherenceFunction f;
    f.family = GFamily::JaynesCummings;
    f.lambda = lambda;
    f.gamma0 = gamma0;
    return f;
}

Cplx decoherence_value(const DecoherenceFunction& f, double t) {
    if (t < 0.0) throw InvalidParams("decoherence function requires t >= 0");
    switch (f.family) {
        case GFamily::Exponential:
            return {std::exp(-f.kappa * t), 0.0};
        case GFamily::DampedOscillatory:
            return {std::exp(-f.kappa * t) * std::cos(f.omega * t), 0.0};
        case GFamily::JaynesCummings: {
            const Cplx delta = jc_delta(f.lambda, f.gamma0);
            if (std::abs(delta) < 1e-300) {
                // degenerate gamma0 = lambda/2: G = e^{-lt/2} (1 + lt/2)
                return {std::exp(-0.5 * f.lambda * t) * (1.0 + 0.5 * f.lambda * t), 0.0};
            }
            Cplx g = std::exp(-0.5 * f.lambda * t) *
                     (std::cosh(0.5 * delta * t) +
                      (f.lambda / delta) * std::sinh(0.5 * delta * t));
            return g;
        }
    }
    throw InvalidParams("unknown decoherence family");
}

Cplx decoherence_derivative(const DecoherenceFunction& f, double t) {
    if (t < 0.0) throw InvalidParams("decoherence function requires t >= 0");
    switch (f.family) {
        case GFamily::Exponential:
            return {-f.kappa * std::exp(-f.kappa * t), 0.0};
        case GFamily::DampedOscillatory:
            return {-std::exp(-f.kappa * t) *
                        (f.kappa * std::cos(f.omega * t) + f.omega * std::sin(f.omega * t)),
                    0.0};
        case GFamily::JaynesCummings: {
            const Cplx delta = jc_delta(f.lambda, f.gamma0);
            if (std::abs(delta) < 1e-300) {
                const double e = std::exp(-0.5 * f.lambda * t);
                return {e * (0.5 * f.lambda - 0.5 * f.lambda * (1.0 + 0.5 * f.lambda * t)), 0.0};
            }
            // G' = -(gamma0 lambda / Delta) e^{-lambda t/2} sinh(Delta t / 2)
            Cplx gp = -(f.gamma0 * f.lambda / delta) * std::exp(-0.5 * f.lambda * t) *
                      std::sinh(0.5 * delta * t);
            return gp;
        }
    }
    throw InvalidParams("unknown decoherence family");
}

double dephasing_rate(const DecoherenceFunction& f, double t) {
    const Cplx g = decoherence_value(f, t);
    if (std::abs(g) <= kGZeroTol)
        throw SingularDecoherence("rate undefined: |G(t)| vanished");
    const Cplx ratio = decoherence_derivative(f, t) / g;
    return -ratio.real();
}

std::pair<double, double> dissipation_rates(const DecoherenceFunction& f, double t) {
    const Cplx g = decoherence_value(f, t);
    if (std::abs(g) <= kGZeroTol)
        throw SingularDecoherence("rates undefined: |G(t)| vanished");
    const Cplx ratio = decoherence_derivative(f, t) / g;
    return {-2.0 * ratio.real(), -2.0 * ratio.imag()};
}

double RateFunction::operator()(double t) const {
    switch (family) {
        case RateFamily::Constant: return c;
        case RateFamily::Ramp: return a + b * t;
        case RateFamily::DampedOscillatory:
            return c * std::exp(-kappa * t) * std::cos(omega * t);
    }
    return 0.0;
}

RateFunction RateFunction::constant(double c) {
    RateFunction r;
    r.family = RateFamily::Constant;
    r.c = c;
    return r;
}

RateFunction RateFunction::ramp(double a, double b) {
    RateFunction r;
    r.family = RateFamily::Ramp;
    r.a = a;
    r.b = b;
    return r;
}

RateFunction RateFunction::damped_oscillatory(double c, double kappa, double omega) {
    if (kappa < 0.0) throw InvalidParams("rate family requires kappa >= 0");
    RateFunction r;
    r.family = RateFamily::DampedOscillatory;
    r.c = c;
    r.kappa = kappa;
    r.omega = omega;
    return r;
}

CMat weyl_operator(int d, int k, int l) {
    if (d < 2) throw IndexOutOfRange("weyl_operator requires d >= 2");
    if (k < 0 || k >= d || l < 0 || l >= d)
        throw IndexOutOfRange("weyl_operator indices must lie in Z_d");
    const double theta = 2.0 * std::numbers::pi / d;
    CMat u = CMat::Zero(d, d);
    for (int m = 0; m < d; ++m) {
        const int e = (m * l) % d;
        u(m, (m + k) % d) = Cplx(std::cos(theta * e), std::sin(theta * e));
    }
    return u;
}

namespace {

// H_{ab} = w^{a x b} with (k,l) x (m,n) = kn - lm, indices a = kd + l.
CMat hadamard_weyl(int d) {
    const int n = d * d;
    const double theta = 2.0 * std::numbers::pi / d;
    CMat h(n, n);
    for (int a = 0; a < n; ++a) {
        const int ka = a / d, la = a % d;
        for (int b = 0; b < n; ++b) {
            const int kb = b / d, lb = b % d;
            int e = ((ka * lb - la * kb) % d + d) % d;
            h(a, b) = Cplx(std::cos(theta * e), std::sin(theta * e));
        }
    }
    return h;
}

} // namespace

RVec random_unitary_probabilities_from_integrals(int d, const RVec& gamma_integrals,
                                                 bool* nonpositive_warning) {
    const int n = d * d;
    if (gamma_integrals.size() != n - 1)
        throw DimensionMismatch("expected d^2 - 1 rate integrals");
    const CMat h = hadamard_weyl(d);

    // lambda_beta = exp(sum_k (H_{beta k} - 1) Gamma_k); the -1 absorbs
    // Gamma_0 = -sum_k Gamma_k and makes lambda_0 = 1 identically.
    CVec lam(n);
    for (int beta = 0; beta < n; ++beta) {
        Cplx expo = 0.0;
        for (int k = 1; k < n; ++k)
            expo += (h(beta, k) - 1.0) * gamma_integrals(k - 1);
        lam(beta) = std::exp(expo);
    }

    CVec p = (h * lam) / double(n);
    const double imag_residue = p.imag().cwiseAbs().maxCoeff();
    if (imag_residue > 1e-10)
        throw Error("random unitary probabilities acquired an imaginary part");
    RVec out = p.real();
    if (nonpositive_warning && out.minCoeff() < -1e-8) *nonpositive_warning = true;
    return out;
}

RVec random_unitary_probabilities(const RateFunctions& rates, double t,
                                  bool* nonpositive_warning) {
    const int n = rates.d * rates.d;
    if (static_cast<int>(rates.gammas.size()) != n - 1)
        throw DimensionMismatch("RateFunctions must carry d^2 - 1 rates");
    RVec integrals = RVec::Zero(n - 1);
    if (t > 0.0)
        for (int k = 0; k < n - 1; ++k)
            integrals(k) = adaptive_simpson(
                [&](double tau) { return rates.gammas[k](tau); }, 0.0, t, kGammaQuadTol);
    return random_unitary_probabilities_from_integrals(rates.d, integrals,
                                                       nonpositive_warning);
}

namespace {

Channel pure_decoherence_channel(const DecoherenceFunction& f, double t) {
    const Cplx gc = decoherence_value(f, t);
    if (std::abs(gc.imag()) > 1e-12)
        throw NotCPTP("pure decoherence requires a real decoherence function");
    const double g = gc.real();
    if (std::abs(g) > 1.0 + 1e-12)
        throw NotCPTP("pure decoherence requires |G(t)| <= 1");
    const double gcl = std::min(1.0, std::abs(g)) * (g < 0 ? -1.0 : 1.0);
    std::vector<CMat> kraus;
    kraus.push_back(std::sqrt(0.5 * (1.0 + gcl)) * CMat::Identity(2, 2));
    kraus.push_back(std::sqrt(0.5 * (1.0 - gcl)) * sigma_z());
    return Channel::from_kraus(kraus);
}

Channel dissipation_channel(const DecoherenceFunction& f, double t) {
    const Cplx g = decoherence_value(f, t);
    const double mag2 = std::norm(g);
    if (mag2 > 1.0 + 1e-12)
        throw NotCPTP("dissipation model requires |G(t)| <= 1");
    CMat k1 = CMat::Zero(2, 2);
    k1(0, 0) = 1.0;
    k1(1, 1) = g;
    CMat k2 = CMat::Zero(2, 2);
    k2(0, 1) = std::sqrt(std::max(0.0, 1.0 - mag2));
    return Channel::from_kraus({k1, k2});
}

Channel random_unitary_channel(int d, const RVec& p) {
    const int n = d * d;
    CMat super = CMat::Zero(n, n);
    for (int a = 0; a < n; ++a) {
        const CMat u = weyl_operator(d, a / d, a % d);
        super += p(a) * kron(u.conjugate(), u);
    }
    return Channel::from_superoperator(std::move(super), d);
}

} // namespace

Channel channel_at(const DynamicalModel& m, double t, bool* cp_warning) {
    switch (m.kind) {
        case ModelKind::PureDecoherence: {
            Channel ch = pure_decoherence_channel(m.g, t);
            if (ch.choi_min_eigenvalue() < kChoiTol)
                throw NotCPTP("pure decoherence map failed the Choi positivity check");
            return ch;
        }
        case ModelKind::Dissipation: {
            Channel ch = dissipation_channel(m.g, t);
            if (ch.choi_min_eigenvalue() < kChoiTol)
                throw NotCPTP("dissipation map failed the Choi positivity check");
            return ch;
        }
        case ModelKind::RandomUnitary: {
            bool warn = false;
            RVec p = random_unitary_probabilities(m.rates, t, &warn);
            if (warn && cp_warning) *cp_warning = true;
            return random_unitary_channel(m.d, p);
        }
    }
    throw UnsupportedModel("unknown model kind");
}

std::vector<Channel> channels_on_grid(const DynamicalModel& m,
                                      const std::vector<double>& grid,
                                      bool* cp_warning) {
    std::vector<Channel> out;
    out.reserve(grid.size());
    if (m.kind != ModelKind::RandomUnitary) {
        for (double t : grid) out.push_back(channel_at(m, t, cp_warning));
        return out;
    }

    // Accumulate Gamma_k across grid intervals; panel tolerance scaled by width.
    const int nrates = m.d * m.d - 1;
    RVec integrals = RVec::Zero(nrates);
    double prev = 0.0;
    bool first = true;
    const double span = grid.empty() ? 1.0 : std::max(grid.back() - grid.front(), 1e-30);
    for (double t : grid) {
        if (first) {
            prev = 0.0;
            first = false;
        }
        if (t > prev) {
            const double panel_tol =
                std::max(kGammaQuadTol * (t - prev) / span, 1e-16);
            for (int k = 0; k < nrates; ++k)
                integrals(k) += adaptive_simpson(
                    [&](double tau) { return m.rates.gammas[k](tau); }, prev, t, panel_tol);
        }
        prev = t;
        bool warn = false;
        RVec p = random_unitary_probabilities_from_integrals(m.d, integrals, &warn);
        if (warn && cp_warning) *cp_warning = true;
        out.push_back(random_unitary_channel(m.d, p));
    }
    return out;
}

CMat generator_superop_at(const DynamicalModel& m, double t) {
    const int d = m.d;
    const CMat id = CMat::Identity(d, d);
    switch (m.kind) {
        case ModelKind::PureDecoherence: {
            // (gamma/2)(sz X sz - X) sends the coherence to -gamma rho01,
            // matching rho01 -> G rho01 with gamma = -G'/G.
            const double gamma = dephasing_rate(m.g, t);
            const CMat sz = sigma_z();
            return 0.5 * gamma * (kron(sz.conjugate(), sz) - kron(id, id));
        }
        case ModelKind::Dissipation: {
            auto [gamma, shift] = dissipation_rates(m.g, t);
            // Jump operator lowers toward the map's fixed point |0><0|.
            CMat lower = CMat::Zero(2, 2);
            lower(0, 1) = 1.0;
            CMat raise = lower.adjoint();
            CMat num = raise * lower; // |1><1|
            CMat super = CMat::Zero(4, 4);
            // -(i/2) s [N, rho]
            super += Cplx(0.0, -0.5 * shift) *
                     (kron(id, num) - kron(num.transpose(), id));
            // gamma (L rho L^dag - 1/2 {N, rho})
            super += gamma * (kron(lower.conjugate(), lower) -
                              0.5 * (kron(id, num) + kron(num.transpose(), id)));
            return super;
        }
        case ModelKind::RandomUnitary: {
            const int n = d * d;
            CMat super = CMat::Zero(n, n);
            for (int a = 1; a < n; ++a) {
                const double rate = m.rates.gammas[a - 1](t);
                const CMat u = weyl_operator(d, a / d, a % d);
                super += rate * (kron(u.conjugate(), u) - kron(id, id));
            }
            return super;
        }
    }
    throw UnsupportedModel("unknown model kind");
}

} // namespace qsflow
