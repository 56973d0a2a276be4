#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qsflow {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline bool is_hermitian(const CMat& a, double tol = 1e-12) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// Column-major stacking; vec(AXB) = (B^T ⊗ A) vec(X).
inline CVec vectorize(const CMat& x) {
    return Eigen::Map<const CVec>(x.data(), x.size());
}

inline CMat unvectorize(const CVec& v, int d) {
    return Eigen::Map<const CMat>(v.data(), d, d);
}

inline CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Real part of tr(AB); exact for Hermitian A, B where the trace is real.
inline double trace_product_re(const CMat& a, const CMat& b) {
    return (a * b).trace().real();
}

inline double min_eigenvalue_hermitian(const CMat& a) {
    Eigen::SelfAdjointEigenSolver<CMat> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

} // namespace qsflow
