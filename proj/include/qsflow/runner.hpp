#pragma once

#include <iosfwd>
#include <string>

#include "qsflow/scanconfig.hpp"

namespace qsflow {

// Exit codes shared by the CLI: 0 = Markovian / success, 1 = error,
// 2 = non-Markovianity detected (scan, measure, criteria).
struct RunOptions {
    int threads = 1;
    bool quiet = false;
    std::uint64_t seed = 12345; // reserved for randomized subcommands
};

int run_frame_validate(FrameKind kind, int dim, std::ostream& out);
int run_represent(const ScanConfig& cfg, double t, std::ostream& out);
int run_scan(const ScanConfig& cfg, const std::string& out_path, std::ostream& log,
             const RunOptions& opts);
int run_measure(const ScanConfig& cfg, std::ostream& out, const RunOptions& opts);
int run_criteria(const ScanConfig& cfg, double t, std::ostream& out);
int run_entropy_scan(const ScanConfig& cfg, const std::string& state_spec,
                     const std::string& out_path, std::ostream& log,
                     const RunOptions& opts);
int run_compare(const ScanConfig& cfg, std::ostream& out, const RunOptions& opts);

// 17-significant-digit scientific formatting used for every CSV number.
std::string csv_number(double v);

} // namespace qsflow
