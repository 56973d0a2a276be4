#include "qsflow/validation.hpp"

#include <cmath>
#include <numbers>

#include "qsflow/errors.hpp"
#include "qsflow/numerics.hpp"

namespace qsflow {

double trace_distance(const CMat& rho1, const CMat& rho2) {
    if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols())
        throw DimensionMismatch("trace_distance requires equal dimensions");
    Eigen::SelfAdjointEigenSolver<CMat> es(rho1 - rho2, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

std::vector<double> blp_flow(const DynamicalModel& m, const CMat& rho1, const CMat& rho2,
                             const std::vector<double>& grid) {
    std::vector<Channel> channels = channels_on_grid(m, grid);
    std::vector<double> dist(grid.size());
    const CMat delta = rho1 - rho2;
    for (std::size_t i = 0; i < grid.size(); ++i)
        dist[i] = trace_distance(channels[i].apply(delta), CMat::Zero(m.d, m.d));
    return difference_series(grid, dist);
}

BlpResult blp_measure(const DynamicalModel& m, const std::vector<double>& grid,
                      int resolution) {
    if (m.d != 2)
        throw UnsupportedDimension("blp_measure is implemented for qubit models only");
    if (resolution < 12)
        throw Error("blp_measure requires angular resolution >= 12");

    std::vector<Channel> channels = channels_on_grid(m, grid);

    const CMat id = CMat::Identity(2, 2);
    CMat sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, Cplx(0, -1), Cplx(0, 1), 0;
    sz << 1, 0, 0, -1;

    BlpResult best;
    std::vector<double> dist(grid.size());
    // Antipodal pure pairs: rho+ - rho- = n . sigma; upper hemisphere suffices.
    for (int i = 0; i <= resolution / 2; ++i) {
        const double theta = std::numbers::pi * i / resolution;
        for (int j = 0; j < resolution; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / resolution;
            CMat delta = std::sin(theta) * std::cos(phi) * sx +
                         std::sin(theta) * std::sin(phi) * sy + std::cos(theta) * sz;
            for (std::size_t g = 0; g < grid.size(); ++g)
                dist[g] = trace_distance(channels[g].apply(delta), CMat::Zero(2, 2));
            std::vector<double> flow = difference_series(grid, dist);
            const double gain = positive_integral(grid, flow, 1e-12);
            if (gain > best.measure) {
                best.measure = gain;
                best.theta = theta;
                best.phi = phi;
                best.flow = flow;
            }
            if (i == 0) break; // theta = 0 is a single pair, phi degenerate
        }
    }
    if (best.flow.empty()) { // fully contractive dynamics: report the polar pair
        CMat delta = sz;
        for (std::size_t g = 0; g < grid.size(); ++g)
            dist[g] = trace_distance(channels[g].apply(delta), CMat::Zero(2, 2));
        best.flow = difference_series(grid, dist);
    }
    return best;
}

RateSignReport cp_rate_report(const DynamicalModel& m, double t) {
    RateSignReport report;
    auto add = [&](std::string name, double value) {
        report.rates.push_back({std::move(name), value, value >= 0.0});
    };
    switch (m.kind) {
        case ModelKind::PureDecoherence:
            add("gamma", dephasing_rate(m.g, t));
            break;
        case ModelKind::Dissipation:
            add("gamma", dissipation_rates(m.g, t).first);
            break;
        case ModelKind::RandomUnitary: {
            const int nr = m.d * m.d - 1;
            if (static_cast<int>(m.rates.gammas.size()) != nr)
                throw UnsupportedModel("random unitary model carries a wrong rate count");
            for (int k = 1; k <= nr; ++k)
                add("gamma_" + std::to_string(k), m.rates.gammas[k - 1](t));
            break;
        }
        default:
            throw UnsupportedModel("unknown model kind");
    }
    for (const auto& r : report.rates)
        report.cp_divisible = report.cp_divisible && r.nonnegative;
    return report;
}

NonnegativityAudit nonnegativity_audit(const QuasiChannel& s) {
    const double lowest = s.S.minCoeff();
    return {lowest, lowest >= -1e-12};
}

} // namespace qsflow
