#include "qsflow/witness.hpp"

#include <algorithm>
#include <cmath>

#include "qsflow/errors.hpp"

namespace qsflow {

namespace {

constexpr double kZetaDeadband = 1e-12;
constexpr double kNegativityTol = 1e-12;

} // namespace

RMat witness_matrix(const QuasiChannel& s) {
    if (s.S.rows() != s.S.cols())
        throw DimensionMismatch("witness requires a square quasi-stochastic matrix");
    return s.S.transpose() * s.S;
}

std::vector<double> witness_eigenvalues(const RMat& w) {
    const int n = static_cast<int>(w.rows());
    if (w.cols() != n) throw NotSymmetric("witness matrix must be square");
    if ((w - w.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw NotSymmetric("witness matrix is not symmetric to 1e-12");

    RMat a = 0.5 * (w + w.transpose());
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());

    // Cyclic-by-rows Jacobi sweeps until every off-diagonal entry falls
    // below 1e-14 relative to the matrix scale.
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                off = std::max(off, std::abs(a(p, q)));
        if (off <= 1e-14 * scale) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double sign = theta >= 0.0 ? 1.0 : -1.0;
                const double tan = sign / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double cos = 1.0 / std::sqrt(1.0 + tan * tan);
                const double sin = tan * cos;
                for (int i = 0; i < n; ++i) {
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = cos * aip - sin * aiq;
                    a(i, q) = sin * aip + cos * aiq;
                }
                for (int i = 0; i < n; ++i) {
                    const double api = a(p, i), aqi = a(q, i);
                    a(p, i) = cos * api - sin * aqi;
                    a(q, i) = sin * api + cos * aqi;
                }
            }
        }
    }

    std::vector<double> evs(n);
    for (int i = 0; i < n; ++i) evs[i] = a(i, i);
    std::sort(evs.begin(), evs.end(), std::greater<>());
    return evs;
}

WitnessTrajectory zeta_trajectory(const DynamicalModel& m, const FrameSet& fs,
                                  const std::vector<double>& grid, int threads) {
    const std::size_t npts = grid.size();
    if (npts < 3) throw Error("zeta_trajectory requires a grid with >= 3 points");
    for (std::size_t i = 0; i + 1 < npts; ++i)
        if (!(grid[i + 1] > grid[i]))
            throw Error("zeta_trajectory requires a strictly increasing grid");

    WitnessTrajectory traj;
    traj.times = grid;
    traj.eigenvalues.assign(npts, {});
    traj.trace_norm.assign(npts, 0.0);
    traj.negativity_flag.assign(npts, 0);
    traj.valid.assign(npts, 1);

    bool cp_warning = false;
    std::vector<Channel> channels = channels_on_grid(m, grid, &cp_warning);

    parallel_for(npts, threads, [&](std::size_t i) {
        try {
            QuasiChannel s = rep_channel(channels[i], fs);
            traj.trace_norm[i] = s.S.squaredNorm(); // tr(S^T S) = sum S_jk^2
            traj.eigenvalues[i] = witness_eigenvalues(witness_matrix(s));
            traj.negativity_flag[i] = s.S.minCoeff() < -kNegativityTol ? 1 : 0;
        } catch (const Error&) {
            traj.valid[i] = 0;
        }
    });

    for (std::size_t i = 0; i < npts; ++i)
        if (traj.negativity_flag[i]) traj.precondition_violated = true;

    traj.zeta = difference_series(traj.times, traj.trace_norm);

    // Max branch derivative over the sorted spectrum.
    const int n = fs.size();
    traj.eigen_flow.assign(npts, 0.0);
    std::vector<double> branch(npts);
    std::vector<double> dbranch;
    for (int b = 0; b < n; ++b) {
        for (std::size_t i = 0; i < npts; ++i)
            branch[i] = traj.valid[i] && static_cast<int>(traj.eigenvalues[i].size()) == n
                            ? traj.eigenvalues[i][b]
                            : 0.0;
        dbranch = difference_series(traj.times, branch);
        for (std::size_t i = 0; i < npts; ++i)
            if (b == 0 || dbranch[i] > traj.eigen_flow[i]) traj.eigen_flow[i] = dbranch[i];
    }

    traj.measure = nm_measure(traj);
    return traj;
}

double nm_measure(const WitnessTrajectory& traj) {
    return positive_integral(traj.times, traj.zeta, kZetaDeadband);
}

std::vector<Segment> backflow_segments(const WitnessTrajectory& traj) {
    return positive_segments(traj.times, traj.zeta, kZetaDeadband);
}

CriteriaReport markov_criteria(const DynamicalModel& m, double t) {
    CriteriaReport report;
    auto add = [&](std::string name, double lhs) {
        report.terms.push_back({std::move(name), lhs, lhs >= 0.0});
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
            std::vector<double> g(nr + 1, 0.0);
            for (int k = 1; k <= nr; ++k) g[k] = m.rates.gammas[k - 1](t);
            if (m.d == 2) {
                add("g1+g2", g[1] + g[2]);
                add("g1+g3", g[1] + g[3]);
                add("g2+g3", g[2] + g[3]);
            } else if (m.d == 3) {
                add("g1+g2+g4+g5+g7+g8", g[1] + g[2] + g[4] + g[5] + g[7] + g[8]);
                add("g1+g2+g3+g4+g6+g8", g[1] + g[2] + g[3] + g[4] + g[6] + g[8]);
                add("g1+g2+g3+g5+g6+g7", g[1] + g[2] + g[3] + g[5] + g[6] + g[7]);
                add("g3+g4+g5+g6+g7+g8", g[3] + g[4] + g[5] + g[6] + g[7] + g[8]);
            } else {
                throw UnsupportedModel("random unitary criteria implemented for d = 2, 3");
            }
            break;
        }
        default:
            throw UnsupportedModel("unknown model kind");
    }

    report.min_lhs = report.terms.front().lhs;
    for (const auto& term : report.terms) {
        report.markovian = report.markovian && term.satisfied;
        report.min_lhs = std::min(report.min_lhs, term.lhs);
    }
    return report;
}

double origin_eigen_flow(const DynamicalModel& m, const FrameSet& fs, double h) {
    bool warn = false;
    QuasiChannel s = rep_channel(channel_at(m, h, &warn), fs);
    std::vector<double> evs = witness_eigenvalues(witness_matrix(s));
    // All eigenvalues start at 1 (identity map), so the sorted maximum tracks
    // the fastest branch.
    return (evs.front() - 1.0) / h;
}

} // namespace qsflow
