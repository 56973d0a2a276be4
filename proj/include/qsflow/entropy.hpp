#pragma once

#include <vector>

#include "qsflow/frames.hpp"
#include "qsflow/models.hpp"
#include "qsflow/qpr.hpp"

namespace qsflow {

// Admissible Renyi orders alpha = 2a/(2b-1) for positive integers a >= b.
// On this family q^alpha = (q^{2a})^{1/(2b-1)} stays real for negative q.
struct AlphaOrder {
    int a = 1;
    int b = 1;

    double value() const { return 2.0 * a / (2.0 * b - 1.0); }

    static AlphaOrder make(int a, int b);          // throws InvalidAlpha
    static AlphaOrder from_value(double alpha);    // throws InvalidAlpha
};

double renyi_entropy(const RVec& q, AlphaOrder order);
double renyi_entropy(const QuasiState& q, AlphaOrder order);

// H_2(q) = -log q^T q.
double collision_entropy(const RVec& q);
double collision_entropy(const QuasiState& q);

struct ViolationInterval {
    double t_begin;
    double t_end;
};

struct H2ScanResult {
    std::vector<double> times;
    std::vector<double> h2;
    std::vector<double> slope;
    std::vector<std::uint8_t> violation; // slope < -1e-10
    std::vector<ViolationInterval> intervals;
    bool bistochastic_warning = false;   // model not unital somewhere on the grid
};

// Tracks H2(q(t)) with q(t) = S(t) q0 and reports the intervals where it
// decreases. Decreases certify non-Markovian backflow for non-negative
// bistochastic dynamics.
H2ScanResult h2_monotonicity_scan(const DynamicalModel& m, const FrameSet& fs,
                                  const QuasiState& q0, const std::vector<double>& grid);

// Does q majorize q2, i.e. does a bistochastic A with A q = q2 exist?
// Decided by LP feasibility (phase-one simplex, tolerance 1e-9).
bool majorization_check(const RVec& q, const RVec& q2);

} // namespace qsflow
