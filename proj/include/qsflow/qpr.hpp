#pragma once

#include <vector>

#include "qsflow/frames.hpp"
#include "qsflow/linalg.hpp"

namespace qsflow {

// Quasiprobability vector of a state: q_j = tr(rho F_j), sum_j q_j = 1.
struct QuasiState {
    RVec q;
    FrameKind frame_kind;
};

// Quasi-stochastic matrix of a channel: S_jk = tr(F_j E[G_k]); columns sum to 1.
// Unital channels give quasi-bistochastic S (unit row sums as well).
struct QuasiChannel {
    RMat S;
    FrameKind frame_kind;
};

// Conditional quasiprobability row of an effect: v_j = tr(M G_j).
struct QuasiEffect {
    RVec v;
    FrameKind frame_kind;
};

// Generator matrix L_jk = tr(F_j L[G_k]); columns sum to 0.
struct QuasiGenerator {
    RMat L;
    FrameKind frame_kind;
};

// CPTP map held in superoperator form (column-major vec convention).
// Kraus input is converted on construction.
class Channel {
public:
    static Channel from_kraus(const std::vector<CMat>& kraus);
    static Channel from_superoperator(CMat super, int d);
    static Channel identity(int d);

    CMat apply(const CMat& x) const;
    Channel compose_after(const Channel& inner) const; // this o inner

    const CMat& superoperator() const { return super_; }
    int dim() const { return d_; }

    bool is_trace_preserving(double tol = 1e-10) const;
    bool is_unital(double tol = 1e-10) const;
    double choi_min_eigenvalue() const;

private:
    Channel(CMat super, int d) : super_(std::move(super)), d_(d) {}
    CMat super_;
    int d_;
};

QuasiState rep_state(const CMat& rho, const FrameSet& fs);
CMat reconstruct_state(const QuasiState& qs, const FrameSet& fs);
QuasiChannel rep_channel(const Channel& channel, const FrameSet& fs);
QuasiEffect rep_effect(const CMat& effect, const FrameSet& fs);
double born_probability(const QuasiEffect& v, const QuasiChannel& s, const QuasiState& q);

// Liouvillian superoperator (column-major vec convention) -> generator matrix.
// Requires tr L[A] = 0 for all A, checked to 1e-10.
QuasiGenerator rep_generator(const CMat& liouvillian, const FrameSet& fs);

// Sum of |negative off-diagonal entries|; 0 iff L has classical Kolmogorov form.
double kolmogorov_negativity(const QuasiGenerator& gen);

} // namespace qsflow
