#include "qsflow/numerics.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qsflow/errors.hpp"

namespace qsflow {

std::vector<double> make_grid(double t0, double t1, int steps) {
    if (steps < 1 || !(t1 > t0))
        throw Error("grid requires t1 > t0 and steps >= 1");
    std::vector<double> grid(steps + 1);
    const double h = (t1 - t0) / steps;
    for (int i = 0; i <= steps; ++i) grid[i] = t0 + h * i;
    grid.back() = t1;
    return grid;
}

namespace {

double simpson_panel(double fa, double fm, double fb, double h) {
    return (fa + 4.0 * fm + fb) * (h / 6.0);
}

double simpson_recurse(const std::function<double(double)>& f, double a, double b,
                       double fa, double fm, double fb, double whole, double tol,
                       int depth, int max_depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_panel(fa, flm, fm, m - a);
    const double right = simpson_panel(fm, frm, fb, b - m);
    const double err = (left + right - whole) / 15.0;
    if (std::abs(err) <= tol) return left + right + err;
    if (depth >= max_depth)
        throw QuadratureFailure("adaptive Simpson did not converge");
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson_panel(fa, fm, fb, b - a);
    return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 0, max_depth);
}

std::vector<double> difference_series(const std::vector<double>& t,
                                      const std::vector<double>& y) {
    const std::size_t n = t.size();
    if (n != y.size() || n < 3)
        throw Error("difference_series requires matching series with >= 3 points");
    std::vector<double> dy(n);
    dy.front() = (y[1] - y[0]) / (t[1] - t[0]);
    dy.back() = (y[n - 1] - y[n - 2]) / (t[n - 1] - t[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i)
        dy[i] = (y[i + 1] - y[i - 1]) / (t[i + 1] - t[i - 1]);
    return dy;
}

std::vector<Segment> positive_segments(const std::vector<double>& t,
                                       const std::vector<double>& y,
                                       double deadband) {
    const std::size_t n = t.size();
    if (n != y.size()) throw Error("positive_segments requires matching series");
    std::vector<Segment> segs;
    bool open = false;
    Segment cur{0.0, 0.0, 0.0};
    auto cross = [&](std::size_t i) { // zero crossing inside [t_i, t_{i+1}]
        return t[i] + (t[i + 1] - t[i]) * (y[i] / (y[i] - y[i + 1]));
    };
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const bool pa = y[i] > deadband;
        const bool pb = y[i + 1] > deadband;
        if (pa && pb) {
            if (!open) { open = true; cur = {t[i], 0.0, 0.0}; }
            cur.integral += 0.5 * (y[i] + y[i + 1]) * (t[i + 1] - t[i]);
        } else if (pa && !pb) {
            if (!open) { open = true; cur = {t[i], 0.0, 0.0}; }
            const double tc = cross(i);
            cur.integral += 0.5 * y[i] * (tc - t[i]);
            cur.t_end = tc;
            segs.push_back(cur);
            open = false;
        } else if (!pa && pb) {
            const double tc = cross(i);
            open = true;
            cur = {tc, 0.0, 0.5 * y[i + 1] * (t[i + 1] - tc)};
        }
    }
    if (open) {
        cur.t_end = t.back();
        segs.push_back(cur);
    }
    return segs;
}

double positive_integral(const std::vector<double>& t, const std::vector<double>& y,
                         double deadband) {
    double total = 0.0;
    for (const auto& s : positive_segments(t, y, deadband)) total += s.integral;
    return total;
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const int workers = std::min<std::size_t>(threads, count);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                body(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace qsflow
