// Command-line front end: frame validation, quasi-stochastic representation,
// witness scans with CSV output, the non-Markovianity measure, the model rate
// criteria, collision-entropy scans and the oracle comparison table.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qsflow/errors.hpp"
#include "qsflow/runner.hpp"

namespace {

int default_threads() {
    if (const char* env = std::getenv("QSFLOW_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-stochastic witness toolkit for open-system dynamics"};
    app.require_subcommand(1);

    qsflow::RunOptions opts;
    opts.threads = default_threads();
    app.add_option("--seed", opts.seed, "RNG seed for randomized subcommands");
    app.add_option("--threads", opts.threads, "worker threads for grid evaluation");
    app.add_flag("--quiet", opts.quiet, "suppress informational output");

    // frame validate --kind <k> --dim <d>
    auto* frame_cmd = app.add_subcommand("frame", "frame tools");
    auto* frame_validate = frame_cmd->add_subcommand("validate", "check frame identities");
    std::string frame_kind = "wootters";
    int frame_dim = 2;
    frame_validate->add_option("--kind", frame_kind, "wootters | gross | sic")->required();
    frame_validate->add_option("--dim", frame_dim, "Hilbert dimension (2 or 3)")->required();

    std::string config_path, out_path, state_spec = "plus";
    double at_time = 0.0;

    auto* represent = app.add_subcommand("represent", "print S for a model at a time");
    represent->add_option("--model", config_path, "config file describing the model")->required();
    std::string represent_frame;
    represent->add_option("--frame", represent_frame, "frame kind override");
    represent->add_option("--time", at_time, "evaluation time")->required();

    auto* scan = app.add_subcommand("scan", "witness trajectory to CSV");
    scan->add_option("--config", config_path, "scan config file")->required();
    scan->add_option("--out", out_path, "output CSV path");

    auto* measure = app.add_subcommand("measure", "non-Markovianity measure");
    measure->add_option("--config", config_path, "scan config file")->required();

    auto* criteria = app.add_subcommand("criteria", "model rate criteria at a time");
    criteria->add_option("--config", config_path, "scan config file")->required();
    criteria->add_option("--time", at_time, "evaluation time")->required();

    auto* entropy_scan = app.add_subcommand("entropy-scan", "collision entropy along the dynamics");
    entropy_scan->add_option("--config", config_path, "scan config file")->required();
    entropy_scan->add_option("--state", state_spec, "initial state spec");
    entropy_scan->add_option("--out", out_path, "output CSV path");

    auto* compare = app.add_subcommand("compare", "witness vs oracle comparison table");
    compare->add_option("--config", config_path, "scan config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (frame_validate->parsed()) {
            qsflow::FrameKind kind = qsflow::frame_kind_from_name(frame_kind, frame_dim);
            return qsflow::run_frame_validate(kind, frame_dim, std::cout);
        }
        if (represent->parsed()) {
            qsflow::ScanConfig cfg = qsflow::load_config(config_path);
            if (!represent_frame.empty())
                cfg.frame = qsflow::frame_kind_from_name(represent_frame, cfg.model.d);
            return qsflow::run_represent(cfg, at_time, std::cout);
        }
        if (scan->parsed())
            return qsflow::run_scan(qsflow::load_config(config_path), out_path, std::cout, opts);
        if (measure->parsed())
            return qsflow::run_measure(qsflow::load_config(config_path), std::cout, opts);
        if (criteria->parsed())
            return qsflow::run_criteria(qsflow::load_config(config_path), at_time, std::cout);
        if (entropy_scan->parsed())
            return qsflow::run_entropy_scan(qsflow::load_config(config_path), state_spec,
                                            out_path, std::cout, opts);
        if (compare->parsed())
            return qsflow::run_compare(qsflow::load_config(config_path), std::cout, opts);
    } catch (const qsflow::ValidationError& e) {
        std::cerr << "config error:\n";
        for (const auto& issue : e.issues) std::cerr << "  " << issue << "\n";
        return 1;
    } catch (const qsflow::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
