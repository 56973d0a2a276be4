#include "qsflow/lp.hpp"

#include <cmath>
#include <vector>

#include "qsflow/errors.hpp"

namespace qsflow {

bool lp_feasible(const RMat& a_in, const RVec& b_in, double tol) {
    const int m = static_cast<int>(a_in.rows());
    const int n = static_cast<int>(a_in.cols());
    if (b_in.size() != m) throw DimensionMismatch("lp_feasible: A and b sizes differ");

    // Standard form with b >= 0, one artificial per row.
    RMat a = a_in;
    RVec b = b_in;
    for (int i = 0; i < m; ++i)
        if (b(i) < 0.0) {
            a.row(i) = -a.row(i);
            b(i) = -b(i);
        }

    const int total = n + m; // structural + artificial columns
    RMat tab(m + 1, total + 1);
    tab.setZero();
    tab.block(0, 0, m, n) = a;
    tab.block(0, n, m, m) = RMat::Identity(m, m);
    tab.col(total).head(m) = b;

    // Objective row: minimize sum of artificials, expressed in the basic
    // solution (artificials basic), so z-row = -sum of constraint rows.
    for (int j = 0; j < n; ++j) tab(m, j) = -a.col(j).sum();
    tab(m, total) = -b.sum();

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    const int max_iters = 50 * (m + n) + 1000;
    for (int iter = 0; iter < max_iters; ++iter) {
        // Bland's rule: smallest-index entering column with negative reduced cost.
        int enter = -1;
        for (int j = 0; j < total; ++j)
            if (tab(m, j) < -1e-12) { enter = j; break; }
        if (enter < 0) break; // optimal

        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < m; ++i) {
            if (tab(i, enter) > 1e-12) {
                const double ratio = tab(i, total) / tab(i, enter);
                if (leave < 0 || ratio < best_ratio - 1e-15 ||
                    (std::abs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave < 0) break; // unbounded cannot happen in phase one; bail out

        const double pivot = tab(leave, enter);
        tab.row(leave) /= pivot;
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double factor = tab(i, enter);
            if (factor != 0.0) tab.row(i) -= factor * tab.row(leave);
        }
        basis[leave] = enter;
    }

    const double objective = -tab(m, total); // remaining artificial mass
    return objective <= tol;
}

} // namespace qsflow
