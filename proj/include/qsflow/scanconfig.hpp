#pragma once

#include <string>

#include "qsflow/frames.hpp"
#include "qsflow/models.hpp"

namespace qsflow {

// Scan description parsed from a flat key = value document.
//
// Keys: model.kind, model.dim, model.G.family, model.G.params.*,
// model.rates.<k>.family, model.rates.<k>.params.*, grid.t0, grid.t1,
// grid.steps, frame.kind, output.path, flags.emit_eigenvalues,
// flags.emit_entropy, flags.compare_oracles.
//
// Defaults: grid.steps = 2000; frame.kind = wigner (wootters for d = 2,
// gross for d = 3); unspecified random-unitary rates are constant 0.
struct ScanConfig {
    DynamicalModel model;
    FrameKind frame = FrameKind::WoottersWigner;
    double t0 = 0.0;
    double t1 = 1.0;
    int steps = 2000;
    std::string output_path;
    bool emit_eigenvalues = true;
    bool emit_entropy = false;
    bool compare_oracles = false;
};

// Throws ParseError on malformed lines (with the line number) and
// ValidationError carrying every validation issue at once.
ScanConfig parse_config(const std::string& text);
ScanConfig load_config(const std::string& path);

FrameKind frame_kind_from_name(const std::string& name, int dim); // throws ValidationError

} // namespace qsflow
