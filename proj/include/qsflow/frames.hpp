#pragma once

#include <string>
#include <vector>

#include "qsflow/linalg.hpp"

namespace qsflow {

enum class FrameKind { WoottersWigner, GrossWigner, SicPovm };

std::string frame_kind_name(FrameKind kind);

// Minimal frame {F_j} with its unique dual {G_j}, n = d^2 operators each.
//
// Structural identities (enforced at construction, audited by validate_frame):
//   sum_j F_j = 1,  tr G_j = 1,  tr(F_j G_k) = delta_jk,  all operators Hermitian.
// For the Wigner kinds the dual is proportional to the frame, G_j = d F_j.
struct FrameSet {
    FrameKind kind;
    int d;
    std::vector<CMat> frame; // F_j, index j = j1*d + j2 over (j1,j2) in Z_d x Z_d
    std::vector<CMat> dual;  // G_j

    int size() const { return d * d; }
};

// Supported pairs: (WoottersWigner,2), (GrossWigner,3), (SicPovm,2), (SicPovm,3).
// Throws UnsupportedFrame otherwise.
FrameSet build_frame(FrameKind kind, int d);

// Unique dual of a minimal frame via Gram-matrix inversion.
// Throws SingularFrame when the Gram matrix has condition number > 1e10.
std::vector<CMat> dual_of(const std::vector<CMat>& frame);

struct FrameCheck {
    std::string name;
    bool pass;
    double deviation; // max absolute deviation observed for this check
};

struct FrameReport {
    std::vector<FrameCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Checks normalization, dual traces, duality delta, Hermiticity and span rank.
FrameReport validate_frame(const FrameSet& fs);

} // namespace qsflow
