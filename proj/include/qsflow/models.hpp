#pragma once

#include <utility>
#include <vector>

#include "qsflow/linalg.hpp"
#include "qsflow/qpr.hpp"

namespace qsflow {

// Decoherence function families, all with G(0) = 1 and |G(t)| <= 1:
//   Exponential        G = exp(-kappa t)
//   DampedOscillatory  G = exp(-kappa t) cos(omega t)
//   JaynesCummings     G = exp(-lambda t / 2) [cosh(D t/2) + (lambda/D) sinh(D t/2)],
//                      D = sqrt(lambda^2 - 2 gamma0 lambda); strong coupling
//                      gamma0 > lambda/2 makes D imaginary and G oscillatory.
enum class GFamily { Exponential, DampedOscillatory, JaynesCummings };

struct DecoherenceFunction {
    GFamily family;
    double kappa = 0.0;  // decay rate
    double omega = 0.0;  // oscillation frequency
    double lambda = 0.0; // bath spectral width
    double gamma0 = 0.0; // coupling strength

    static DecoherenceFunction exponential(double kappa);
    static DecoherenceFunction damped_oscillatory(double kappa, double omega);
    static DecoherenceFunction jaynes_cummings(double lambda, double gamma0);
};

Cplx decoherence_value(const DecoherenceFunction& f, double t);
Cplx decoherence_derivative(const DecoherenceFunction& f, double t); // analytic dG/dt

// gamma = -G'/G (dephasing convention). Throws SingularDecoherence at G zeros.
double dephasing_rate(const DecoherenceFunction& f, double t);
// (gamma, s) = (-2 Re[G'/G], -2 Im[G'/G]) (dissipation convention).
std::pair<double, double> dissipation_rates(const DecoherenceFunction& f, double t);

enum class RateFamily { Constant, Ramp, DampedOscillatory };

struct RateFunction {
    RateFamily family = RateFamily::Constant;
    double c = 0.0;     // constant value / oscillation amplitude
    double a = 0.0;     // ramp offset
    double b = 0.0;     // ramp slope
    double kappa = 0.0; // oscillation damping
    double omega = 0.0; // oscillation frequency

    double operator()(double t) const;

    static RateFunction constant(double c);
    static RateFunction ramp(double a, double b);
    static RateFunction damped_oscillatory(double c, double kappa, double omega);
};

// The d^2 - 1 independent rates of a random unitary model, indexed 1..d^2-1.
struct RateFunctions {
    int d = 2;
    std::vector<RateFunction> gammas; // size d^2 - 1
};

enum class ModelKind { PureDecoherence, Dissipation, RandomUnitary };

struct DynamicalModel {
    ModelKind kind;
    int d;
    DecoherenceFunction g;   // PureDecoherence / Dissipation
    RateFunctions rates;     // RandomUnitary
};

// U_{k,l} = sum_m w^{ml} |m><m+k mod d|, w = exp(2 pi i / d).
// U_{0,0} = identity; for d = 2 these are the Pauli operators up to phase.
CMat weyl_operator(int d, int k, int l);

// Mixing probabilities p_alpha(t) of the random unitary map. Rates are
// integrated by adaptive Simpson to 1e-10. If min p < -1e-8 the optional
// warning flag is set; the map stays well-defined either way.
RVec random_unitary_probabilities(const RateFunctions& rates, double t,
                                  bool* nonpositive_warning = nullptr);

// As above but with the rate integrals Gamma_k supplied directly.
RVec random_unitary_probabilities_from_integrals(int d, const RVec& gamma_integrals,
                                                 bool* nonpositive_warning = nullptr);

// The map Lambda_t. Trace preservation is checked to 1e-10 and, for the two
// bath models, complete positivity via the Choi minimum eigenvalue (>= -1e-8,
// NotCPTP otherwise). Random unitary maps with negative mixing probabilities
// are reported through the warning flag instead.
Channel channel_at(const DynamicalModel& m, double t, bool* cp_warning = nullptr);

// Channels on a full grid; random-unitary rate integrals accumulate
// incrementally across the grid so a scan costs O(grid).
std::vector<Channel> channels_on_grid(const DynamicalModel& m,
                                      const std::vector<double>& grid,
                                      bool* cp_warning = nullptr);

// Time-local Liouvillian as a superoperator (column-major vec convention).
CMat generator_superop_at(const DynamicalModel& m, double t);

} // namespace qsflow
