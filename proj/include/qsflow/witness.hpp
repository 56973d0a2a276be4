#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsflow/frames.hpp"
#include "qsflow/models.hpp"
#include "qsflow/numerics.hpp"
#include "qsflow/qpr.hpp"

namespace qsflow {

// Scan of the witness W(t) = S^T S over a uniform time grid.
//
// zeta is the derivative of tr(S^T S) (the trace norm of the PSD witness);
// its positive part integrates to the non-Markovianity measure. eigen_flow
// tracks the fastest-growing eigenvalue branch, which is the quantity whose
// sign reproduces the model rate criteria pointwise for bistochastic maps.
struct WitnessTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> eigenvalues; // sorted descending per time
    std::vector<double> trace_norm;               // tr(S^T S)
    std::vector<double> zeta;                     // d/dt trace_norm
    std::vector<double> eigen_flow;               // max branch derivative
    std::vector<std::uint8_t> negativity_flag;    // S has an entry < -1e-12
    std::vector<std::uint8_t> valid;              // false marks per-point model failures
    double measure = 0.0;                         // integral of positive zeta
    bool precondition_violated = false;           // negativity seen anywhere on the grid
};

RMat witness_matrix(const QuasiChannel& s);

// Eigenvalues by cyclic Jacobi rotations (off-diagonal convergence 1e-14),
// returned sorted descending. Throws NotSymmetric when W is not symmetric
// to 1e-12.
std::vector<double> witness_eigenvalues(const RMat& w);

WitnessTrajectory zeta_trajectory(const DynamicalModel& m, const FrameSet& fs,
                                  const std::vector<double>& grid, int threads = 1);

// Trapezoid integral of zeta over its positive segments (deadband 1e-12).
double nm_measure(const WitnessTrajectory& traj);
std::vector<Segment> backflow_segments(const WitnessTrajectory& traj);

struct CriterionTerm {
    std::string name;
    double lhs;      // criterion value; Markovian requires lhs >= 0
    bool satisfied;
};

struct CriteriaReport {
    std::vector<CriterionTerm> terms;
    bool markovian = true;
    double min_lhs = 0.0;
};

// Model-specific Markovian inequalities: the rate sign for the two bath
// models, the pairwise rate sums for the qubit random unitary model, and the
// four six-term sums for the qutrit one.
CriteriaReport markov_criteria(const DynamicalModel& m, double t);

// Per-eigenvalue flow at t = 0+, evaluated as (ev(h) - 1)/h on the sorted
// spectrum. Positive flow certifies a growing witness eigenvalue.
double origin_eigen_flow(const DynamicalModel& m, const FrameSet& fs, double h = 1e-3);

} // namespace qsflow
