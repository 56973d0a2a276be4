#include "qsflow/qpr.hpp"

#include <cmath>

#include "qsflow/errors.hpp"

namespace qsflow {

namespace {

void require_same_frame(FrameKind a, FrameKind b, const char* where) {
    if (a != b)
        throw FrameMismatch(std::string(where) + ": operands use different frame kinds");
}

} // namespace

Channel Channel::from_kraus(const std::vector<CMat>& kraus) {
    if (kraus.empty()) throw DimensionMismatch("empty Kraus list");
    const int d = static_cast<int>(kraus.front().rows());
    CMat super = CMat::Zero(d * d, d * d);
    for (const auto& k : kraus) {
        if (k.rows() != d || k.cols() != d)
            throw DimensionMismatch("Kraus operators have inconsistent dimensions");
        super += kron(k.conjugate(), k); // vec(K X K^dag) = (conj(K) (x) K) vec(X)
    }
    return Channel(std::move(super), d);
}

Channel Channel::from_superoperator(CMat super, int d) {
    if (super.rows() != d * d || super.cols() != d * d)
        throw DimensionMismatch("superoperator must be d^2 x d^2");
    return Channel(std::move(super), d);
}

Channel Channel::identity(int d) {
    return Channel(CMat::Identity(d * d, d * d), d);
}

CMat Channel::apply(const CMat& x) const {
    if (x.rows() != d_ || x.cols() != d_)
        throw DimensionMismatch("channel input has wrong dimension");
    return unvectorize(super_ * vectorize(x), d_);
}

Channel Channel::compose_after(const Channel& inner) const {
    if (inner.d_ != d_)
        throw DimensionMismatch("composed channels act on different dimensions");
    return Channel(super_ * inner.super_, d_);
}

bool Channel::is_trace_preserving(double tol) const {
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) {
            CMat unit = CMat::Zero(d_, d_);
            unit(i, j) = 1.0;
            Cplx tr = apply(unit).trace();
            Cplx want = (i == j) ? Cplx(1) : Cplx(0);
            if (std::abs(tr - want) > tol) return false;
        }
    return true;
}

bool Channel::is_unital(double tol) const {
    return (apply(CMat::Identity(d_, d_)) - CMat::Identity(d_, d_))
               .cwiseAbs()
               .maxCoeff() <= tol;
}

double Channel::choi_min_eigenvalue() const {
    CMat choi = CMat::Zero(d_ * d_, d_ * d_);
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) {
            CMat unit = CMat::Zero(d_, d_);
            unit(i, j) = 1.0;
            CMat block = apply(unit);
            choi.block(i * d_, j * d_, d_, d_) = block;
        }
    return min_eigenvalue_hermitian(0.5 * (choi + choi.adjoint()));
}

QuasiState rep_state(const CMat& rho, const FrameSet& fs) {
    if (rho.rows() != fs.d || rho.cols() != fs.d)
        throw DimensionMismatch("state dimension does not match frame dimension");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw NotAState("density matrix is not Hermitian");
    if (std::abs(rho.trace() - Cplx(1.0)) > 1e-10)
        throw NotAState("density matrix trace is not 1");
    if (min_eigenvalue_hermitian(rho) < -1e-10)
        throw NotAState("density matrix has a negative eigenvalue");

    QuasiState out;
    out.frame_kind = fs.kind;
    out.q.resize(fs.size());
    for (int j = 0; j < fs.size(); ++j)
        out.q(j) = trace_product_re(rho, fs.frame[j]);
    return out;
}

CMat reconstruct_state(const QuasiState& qs, const FrameSet& fs) {
    if (qs.q.size() != fs.size())
        throw DimensionMismatch("quasiprobability vector length does not match frame size");
    CMat rho = CMat::Zero(fs.d, fs.d);
    for (int j = 0; j < fs.size(); ++j)
        rho += qs.q(j) * fs.dual[j];
    return rho;
}

QuasiChannel rep_channel(const Channel& channel, const FrameSet& fs) {
    if (channel.dim() != fs.d)
        throw DimensionMismatch("channel dimension does not match frame dimension");
    if (!channel.is_trace_preserving(1e-10))
        throw NotTracePreserving("channel is not trace-preserving to 1e-10");

    const int n = fs.size();
    QuasiChannel out;
    out.frame_kind = fs.kind;
    out.S.resize(n, n);
    for (int k = 0; k < n; ++k) {
        CMat image = channel.apply(fs.dual[k]);
        for (int j = 0; j < n; ++j)
            out.S(j, k) = trace_product_re(fs.frame[j], image);
    }
    return out;
}

QuasiEffect rep_effect(const CMat& effect, const FrameSet& fs) {
    if (effect.rows() != fs.d || effect.cols() != fs.d)
        throw DimensionMismatch("effect dimension does not match frame dimension");
    if ((effect - effect.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw NotAnEffect("effect is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMat> es(effect, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10 || es.eigenvalues().maxCoeff() > 1.0 + 1e-10)
        throw NotAnEffect("effect eigenvalues are outside [0, 1]");

    QuasiEffect out;
    out.frame_kind = fs.kind;
    out.v.resize(fs.size());
    for (int j = 0; j < fs.size(); ++j)
        out.v(j) = trace_product_re(effect, fs.dual[j]);
    return out;
}

double born_probability(const QuasiEffect& v, const QuasiChannel& s, const QuasiState& q) {
    require_same_frame(v.frame_kind, s.frame_kind, "born_probability");
    require_same_frame(s.frame_kind, q.frame_kind, "born_probability");
    if (v.v.size() != s.S.rows() || s.S.cols() != q.q.size())
        throw DimensionMismatch("born_probability: vector/matrix sizes are inconsistent");
    return v.v.dot(s.S * q.q);
}

QuasiGenerator rep_generator(const CMat& liouvillian, const FrameSet& fs) {
    const int d = fs.d;
    if (liouvillian.rows() != d * d || liouvillian.cols() != d * d)
        throw DimensionMismatch("Liouvillian must be d^2 x d^2");

    // tr L[A] = 0 for all A <=> tr L[E_ij] = 0 on every matrix unit.
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            CMat unit = CMat::Zero(d, d);
            unit(i, j) = 1.0;
            CMat image = unvectorize(liouvillian * vectorize(unit), d);
            if (std::abs(image.trace()) > 1e-10)
                throw NotTraceAnnihilating("generator does not annihilate the trace");
        }

    const int n = fs.size();
    QuasiGenerator out;
    out.frame_kind = fs.kind;
    out.L.resize(n, n);
    for (int k = 0; k < n; ++k) {
        CMat image = unvectorize(liouvillian * vectorize(fs.dual[k]), d);
        for (int j = 0; j < n; ++j)
            out.L(j, k) = trace_product_re(fs.frame[j], image);
    }
    return out;
}

double kolmogorov_negativity(const QuasiGenerator& gen) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < gen.L.rows(); ++j)
        for (Eigen::Index k = 0; k < gen.L.cols(); ++k)
            if (j != k && gen.L(j, k) < 0.0) total += -gen.L(j, k);
    return total;
}

} // namespace qsflow
