#include "qsflow/entropy.hpp"

#include <cmath>

#include "qsflow/errors.hpp"
#include "qsflow/lp.hpp"
#include "qsflow/numerics.hpp"

namespace qsflow {

namespace {

constexpr double kSlopeTol = 1e-10;

double admissible_power(double q, int a, int b) {
    // q^alpha = (q^{2a})^{1/(2b-1)}; the even power is non-negative, the odd
    // root is then the plain real root.
    const double even = std::pow(q * q, a);
    return std::pow(even, 1.0 / (2.0 * b - 1.0));
}

} // namespace

AlphaOrder AlphaOrder::make(int a, int b) {
    if (a < 1 || b < 1 || a < b)
        throw InvalidAlpha("alpha = 2a/(2b-1) requires positive integers a >= b");
    return AlphaOrder{a, b};
}

AlphaOrder AlphaOrder::from_value(double alpha) {
    if (alpha > 0.0) {
        for (int b = 1; b <= 64; ++b) {
            const double a_real = alpha * (2.0 * b - 1.0) / 2.0;
            const int a = static_cast<int>(std::lround(a_real));
            if (a >= b && std::abs(a_real - a) < 1e-9) return AlphaOrder{a, b};
        }
    }
    throw InvalidAlpha("alpha is not of the admissible form 2a/(2b-1) with a >= b");
}

double renyi_entropy(const RVec& q, AlphaOrder order) {
    if (order.a < 1 || order.b < 1 || order.a < order.b)
        throw InvalidAlpha("invalid Renyi order");
    double sum = 0.0;
    for (Eigen::Index k = 0; k < q.size(); ++k)
        sum += admissible_power(q(k), order.a, order.b);
    if (sum <= 0.0)
        throw DivergentSum("sum of q^alpha is not positive");
    return std::log(sum) / (1.0 - order.value());
}

double renyi_entropy(const QuasiState& q, AlphaOrder order) {
    return renyi_entropy(q.q, order);
}

double collision_entropy(const RVec& q) {
    return -std::log(q.dot(q));
}

double collision_entropy(const QuasiState& q) {
    return collision_entropy(q.q);
}

H2ScanResult h2_monotonicity_scan(const DynamicalModel& m, const FrameSet& fs,
                                  const QuasiState& q0, const std::vector<double>& grid) {
    if (q0.frame_kind != fs.kind)
        throw FrameMismatch("h2_monotonicity_scan: state frame differs from the frame set");
    H2ScanResult result;
    result.times = grid;
    result.h2.resize(grid.size());

    std::vector<Channel> channels = channels_on_grid(m, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        QuasiChannel s = rep_channel(channels[i], fs);
        const RVec rows = s.S.rowwise().sum();
        if ((rows.array() - 1.0).abs().maxCoeff() > 1e-10)
            result.bistochastic_warning = true;
        result.h2[i] = collision_entropy(RVec(s.S * q0.q));
    }

    result.slope = difference_series(result.times, result.h2);
    result.violation.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        result.violation[i] = result.slope[i] < -kSlopeTol ? 1 : 0;

    // Maximal runs of decreasing H2, endpoints refined by the slope crossings.
    std::vector<double> neg_slope(result.slope.size());
    for (std::size_t i = 0; i < result.slope.size(); ++i) neg_slope[i] = -result.slope[i];
    for (const Segment& seg : positive_segments(result.times, neg_slope, kSlopeTol))
        result.intervals.push_back({seg.t_begin, seg.t_end});
    return result;
}

bool majorization_check(const RVec& q, const RVec& q2) {
    const int n = static_cast<int>(q.size());
    if (q2.size() != n)
        throw DimensionMismatch("majorization_check requires equal lengths");

    // Unknowns: A row-major, A_{ij} >= 0.
    // Constraints: row sums 1, column sums 1, A q = q2.
    const int vars = n * n;
    const int rows = 3 * n;
    RMat a = RMat::Zero(rows, vars);
    RVec b(rows);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, i * n + j) = 1.0;
        b(i) = 1.0;
    }
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) a(n + j, i * n + j) = 1.0;
        b(n + j) = 1.0;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(2 * n + i, i * n + j) = q(j);
        b(2 * n + i) = q2(i);
    }
    return lp_feasible(a, b, 1e-9);
}

} // namespace qsflow
