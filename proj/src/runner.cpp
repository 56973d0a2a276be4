#include "qsflow/runner.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qsflow/entropy.hpp"
#include "qsflow/errors.hpp"
#include "qsflow/validation.hpp"
#include "qsflow/witness.hpp"

namespace qsflow {

namespace {

constexpr double kMeasureTol = 1e-12;
constexpr double kFlowTol = 1e-10;

bool nonmarkovian(const WitnessTrajectory& traj) {
    if (traj.measure > kMeasureTol) return true;
    for (double f : traj.eigen_flow)
        if (f > kFlowTol) return true;
    return false;
}

CMat initial_state_from_spec(const std::string& spec, int d) {
    CMat rho = CMat::Zero(d, d);
    if (spec == "mixed") {
        rho = CMat::Identity(d, d) / double(d);
    } else if (spec == "zero") {
        rho(0, 0) = 1.0;
    } else if (spec == "one") {
        rho(1, 1) = 1.0;
    } else if (spec == "plus" || spec == "minus") {
        if (d != 2) throw ValidationError({"state: '" + spec + "' is a qubit state"});
        const double sgn = spec == "plus" ? 1.0 : -1.0;
        rho << 0.5, sgn * 0.5, sgn * 0.5, 0.5;
    } else if (spec == "balanced") {
        CVec psi = CVec::Constant(d, 1.0 / std::sqrt(double(d)));
        rho = psi * psi.adjoint();
    } else {
        throw ValidationError({"state: unknown spec '" + spec +
                               "' (zero, one, plus, minus, mixed, balanced)"});
    }
    return rho;
}

} // namespace

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

int run_frame_validate(FrameKind kind, int dim, std::ostream& out) {
    FrameSet fs = build_frame(kind, dim);
    FrameReport report = validate_frame(fs);
    out << "frame " << frame_kind_name(kind) << " d=" << dim << "\n";
    for (const auto& check : report.checks) {
        out << "  " << std::left << std::setw(14) << check.name
            << (check.pass ? "pass" : "FAIL") << "   max deviation "
            << csv_number(check.deviation) << "\n";
    }
    return report.all_pass() ? 0 : 1;
}

int run_represent(const ScanConfig& cfg, double t, std::ostream& out) {
    FrameSet fs = build_frame(cfg.frame, cfg.model.d);
    QuasiChannel s = rep_channel(channel_at(cfg.model, t), fs);
    for (Eigen::Index i = 0; i < s.S.rows(); ++i) {
        for (Eigen::Index j = 0; j < s.S.cols(); ++j) {
            if (j) out << ",";
            out << csv_number(s.S(i, j));
        }
        out << "\n";
    }
    return 0;
}

int run_scan(const ScanConfig& cfg, const std::string& out_path, std::ostream& log,
             const RunOptions& opts) {
    FrameSet fs = build_frame(cfg.frame, cfg.model.d);
    const auto grid = make_grid(cfg.t0, cfg.t1, cfg.steps);
    WitnessTrajectory traj = zeta_trajectory(cfg.model, fs, grid, opts.threads);

    const std::string path = out_path.empty() ? cfg.output_path : out_path;
    if (path.empty()) throw ValidationError({"output.path: no output file given"});
    std::ofstream csv(path);
    if (!csv) throw Error("cannot open output file: " + path);

    const int n = fs.size();
    csv << "t";
    for (int b = 1; b <= n; ++b) csv << ",ev_" << b;
    csv << ",trace_norm,zeta,neg_flag\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        csv << csv_number(traj.times[i]);
        for (int b = 0; b < n; ++b)
            csv << "," << csv_number(traj.valid[i] ? traj.eigenvalues[i][b] : 0.0);
        csv << "," << csv_number(traj.trace_norm[i]) << "," << csv_number(traj.zeta[i])
            << "," << int(traj.negativity_flag[i]) << "\n";
    }

    if (!opts.quiet) {
        log << "N = " << csv_number(traj.measure) << "\n";
        if (traj.precondition_violated)
            log << "witness precondition violated: negative quasi-channel entries on the grid\n";
    }
    return nonmarkovian(traj) ? 2 : 0;
}

int run_measure(const ScanConfig& cfg, std::ostream& out, const RunOptions& opts) {
    FrameSet fs = build_frame(cfg.frame, cfg.model.d);
    const auto grid = make_grid(cfg.t0, cfg.t1, cfg.steps);
    WitnessTrajectory traj = zeta_trajectory(cfg.model, fs, grid, opts.threads);

    out << "N = " << std::fixed << std::setprecision(6) << traj.measure
        << std::defaultfloat << "\n";
    const auto segments = backflow_segments(traj);
    for (const auto& seg : segments)
        out << "  backflow [" << csv_number(seg.t_begin) << ", " << csv_number(seg.t_end)
            << "]  contribution " << csv_number(seg.integral) << "\n";
    if (traj.precondition_violated)
        out << "witness precondition violated: negative quasi-channel entries on the grid\n";
    return nonmarkovian(traj) ? 2 : 0;
}

int run_criteria(const ScanConfig& cfg, double t, std::ostream& out) {
    CriteriaReport report = markov_criteria(cfg.model, t);
    out << "criteria at t = " << t << "\n";
    for (const auto& term : report.terms)
        out << "  " << std::left << std::setw(22) << term.name << (term.satisfied ? ">= 0" : "<  0")
            << "   lhs = " << csv_number(term.lhs) << "\n";
    out << (report.markovian ? "markovian" : "non-markovian") << "\n";
    return report.markovian ? 0 : 2;
}

int run_entropy_scan(const ScanConfig& cfg, const std::string& state_spec,
                     const std::string& out_path, std::ostream& log,
                     const RunOptions& opts) {
    (void)opts;
    FrameSet fs = build_frame(cfg.frame, cfg.model.d);
    const auto grid = make_grid(cfg.t0, cfg.t1, cfg.steps);
    QuasiState q0 = rep_state(initial_state_from_spec(state_spec, cfg.model.d), fs);
    H2ScanResult scan = h2_monotonicity_scan(cfg.model, fs, q0, grid);

    const std::string path = out_path.empty() ? cfg.output_path : out_path;
    if (path.empty()) throw ValidationError({"output.path: no output file given"});
    std::ofstream csv(path);
    if (!csv) throw Error("cannot open output file: " + path);

    csv << "t,H2,slope,violation_flag\n";
    for (std::size_t i = 0; i < scan.times.size(); ++i)
        csv << csv_number(scan.times[i]) << "," << csv_number(scan.h2[i]) << ","
            << csv_number(scan.slope[i]) << "," << int(scan.violation[i]) << "\n";

    if (!opts.quiet) {
        if (scan.bistochastic_warning)
            log << "warning: dynamics is not unital; H2 monotonicity is not guaranteed\n";
        for (const auto& iv : scan.intervals)
            log << "H2 decrease on [" << csv_number(iv.t_begin) << ", "
                << csv_number(iv.t_end) << "]\n";
    }
    return 0;
}

int run_compare(const ScanConfig& cfg, std::ostream& out, const RunOptions& opts) {
    FrameSet fs = build_frame(cfg.frame, cfg.model.d);
    const auto grid = make_grid(cfg.t0, cfg.t1, cfg.steps);
    WitnessTrajectory traj = zeta_trajectory(cfg.model, fs, grid, opts.threads);

    out << "witness measure     N      = " << csv_number(traj.measure) << "\n";
    if (cfg.model.d == 2) {
        BlpResult blp = blp_measure(cfg.model, grid, 24);
        out << "BLP oracle          N_BLP  = " << csv_number(blp.measure)
            << "   (best pair theta = " << blp.theta << ", phi = " << blp.phi << ")\n";
    } else {
        out << "BLP oracle          skipped (qubit models only)\n";
    }

    int cp_ok = 0;
    for (double t : grid) {
        try {
            if (cp_rate_report(cfg.model, t).cp_divisible) ++cp_ok;
        } catch (const SingularDecoherence&) {
        }
    }
    out << "CP rate flags       non-negative at " << cp_ok << " / " << grid.size()
        << " grid points\n";

    double min_entry = 0.0;
    bool nonneg = true;
    for (const Channel& ch : channels_on_grid(cfg.model, grid)) {
        NonnegativityAudit audit = nonnegativity_audit(rep_channel(ch, fs));
        min_entry = std::min(min_entry, audit.min_entry);
        nonneg = nonneg && audit.nonnegative;
    }
    out << "non-negativity      min entry " << csv_number(min_entry) << "  "
        << (nonneg ? "pass" : "FAIL") << "\n";
    return 0;
}

} // namespace qsflow
