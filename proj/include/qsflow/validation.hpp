#pragma once

#include <string>
#include <vector>

#include "qsflow/models.hpp"
#include "qsflow/qpr.hpp"

namespace qsflow {

// D(rho1, rho2) = (1/2) sum |eigenvalues of rho1 - rho2|, in [0, 1].
double trace_distance(const CMat& rho1, const CMat& rho2);

// sigma(t) = d/dt D(Lambda_t[rho1], Lambda_t[rho2]) by central differences.
std::vector<double> blp_flow(const DynamicalModel& m, const CMat& rho1, const CMat& rho2,
                             const std::vector<double>& grid);

struct BlpResult {
    double measure = 0.0;      // max over pairs of the positive-flow integral
    double theta = 0.0;        // Bloch angles of the best pair (rho and its antipode)
    double phi = 0.0;
    std::vector<double> flow;  // sigma(t) for the best pair
};

// Grid search over antipodal pure-state pairs on the Bloch sphere,
// resolution angular steps in each of theta and phi. Qubit models only.
BlpResult blp_measure(const DynamicalModel& m, const std::vector<double>& grid,
                      int resolution);

struct RateFlag {
    std::string name;
    double value;
    bool nonnegative;
};

struct RateSignReport {
    std::vector<RateFlag> rates;
    bool cp_divisible = true; // all rates non-negative at t
};

RateSignReport cp_rate_report(const DynamicalModel& m, double t);

struct NonnegativityAudit {
    double min_entry;
    bool nonnegative; // min entry >= -1e-12
};

NonnegativityAudit nonnegativity_audit(const QuasiChannel& s);

} // namespace qsflow
