#pragma once

#include "qsflow/linalg.hpp"

namespace qsflow {

// Feasibility of {x >= 0, A x = b} by phase-one simplex with Bland's rule.
// Feasible iff the artificial objective can be driven below tol.
bool lp_feasible(const RMat& a, const RVec& b, double tol = 1e-9);

} // namespace qsflow
