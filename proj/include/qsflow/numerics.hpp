#pragma once

#include <functional>
#include <vector>

namespace qsflow {

// Uniform grid with steps+1 points covering [t0, t1].
std::vector<double> make_grid(double t0, double t1, int steps);

// Recursive adaptive Simpson; throws QuadratureFailure if the recursion
// bottoms out before reaching the tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 48);

// Central differences on a uniform grid, one-sided at the endpoints.
std::vector<double> difference_series(const std::vector<double>& t,
                                      const std::vector<double>& y);

struct Segment {
    double t_begin;
    double t_end;
    double integral;
};

// Trapezoid integral of y restricted to y > deadband, with linear
// interpolation of the zero crossings. Returns the per-run segments;
// the total is their sum.
std::vector<Segment> positive_segments(const std::vector<double>& t,
                                       const std::vector<double>& y,
                                       double deadband = 1e-12);

double positive_integral(const std::vector<double>& t, const std::vector<double>& y,
                         double deadband = 1e-12);

// Index-parallel map; results land by index so output order is deterministic.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

} // namespace qsflow
