#include "qsflow/frames.hpp"

#include <cmath>
#include <numbers>

#include "qsflow/errors.hpp"

namespace qsflow {

namespace {

constexpr double kStructuralTol = 1e-12;

CMat pauli(int which) {
    CMat m(2, 2);
    switch (which) {
        case 1: m << 0, 1, 1, 0; break;                       // sigma_x
        case 2: m << 0, Cplx(0, -1), Cplx(0, 1), 0; break;    // sigma_y
        case 3: m << 1, 0, 0, -1; break;                      // sigma_z
        default: m.setIdentity(); break;
    }
    return m;
}

// F_j = (1/4)[1 + (-1)^{j1} sz + (-1)^{j2} sx + (-1)^{j1+j2} sy]
std::vector<CMat> wootters_qubit_frame() {
    const CMat id = CMat::Identity(2, 2);
    const CMat sx = pauli(1), sy = pauli(2), sz = pauli(3);
    std::vector<CMat> fs;
    fs.reserve(4);
    for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2) {
            double a = (j1 % 2) ? -1.0 : 1.0;
            double b = (j2 % 2) ? -1.0 : 1.0;
            fs.push_back(0.25 * (id + a * sz + b * sx + a * b * sy));
        }
    return fs;
}

// Phase-point operators for d = 3:
//   F_{(j1,j2)}[r,c] = (1/3) [r+c = 2 j2 (mod 3)] w^{j1 (c-r)},  w = exp(2 pi i / 3).
// F_{00} is the parity operator over 3; each F is Hermitian with unit row/col pattern.
std::vector<CMat> gross_qutrit_frame() {
    const double theta = 2.0 * std::numbers::pi / 3.0;
    auto omega_pow = [&](int e) {
        int m = ((e % 3) + 3) % 3;
        return Cplx(std::cos(theta * m), std::sin(theta * m));
    };
    std::vector<CMat> fs;
    fs.reserve(9);
    for (int j1 = 0; j1 < 3; ++j1)
        for (int j2 = 0; j2 < 3; ++j2) {
            CMat f = CMat::Zero(3, 3);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c)
                    if ((r + c) % 3 == (2 * j2) % 3)
                        f(r, c) = omega_pow(j1 * (c - r)) / 3.0;
            fs.push_back(f);
        }
    return fs;
}

// Qubit SIC from the Bloch tetrahedron; F_j = projector / d.
std::vector<CMat> sic_qubit_frame() {
    const double s = 1.0 / std::sqrt(3.0);
    const double n[4][3] = {
        {s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    const CMat id = CMat::Identity(2, 2);
    const CMat sx = pauli(1), sy = pauli(2), sz = pauli(3);
    std::vector<CMat> fs;
    fs.reserve(4);
    for (const auto& v : n) {
        CMat proj = 0.5 * (id + v[0] * sx + v[1] * sy + v[2] * sz);
        fs.push_back(proj / 2.0);
    }
    return fs;
}

// Qutrit SIC generated from the fiducial (0, 1, -1)/sqrt(2) by the Weyl shifts
// U_{k,l} = sum_m w^{ml} |m><m+k|; F_j = projector / d, j = 3k + l.
std::vector<CMat> sic_qutrit_frame() {
    const double theta = 2.0 * std::numbers::pi / 3.0;
    CVec fid(3);
    fid << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    std::vector<CMat> fs;
    fs.reserve(9);
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            CMat u = CMat::Zero(3, 3);
            for (int m = 0; m < 3; ++m) {
                int e = (m * l) % 3;
                u(m, (m + k) % 3) = Cplx(std::cos(theta * e), std::sin(theta * e));
            }
            CVec psi = u * fid;
            CMat proj = psi * psi.adjoint();
            fs.push_back(proj / 3.0);
        }
    return fs;
}

} // namespace

std::string frame_kind_name(FrameKind kind) {
    switch (kind) {
        case FrameKind::WoottersWigner: return "wootters";
        case FrameKind::GrossWigner: return "gross";
        case FrameKind::SicPovm: return "sic";
    }
    return "?";
}

FrameSet build_frame(FrameKind kind, int d) {
    FrameSet fs;
    fs.kind = kind;
    fs.d = d;
    if (kind == FrameKind::WoottersWigner && d == 2) {
        fs.frame = wootters_qubit_frame();
    } else if (kind == FrameKind::GrossWigner && d == 3) {
        fs.frame = gross_qutrit_frame();
    } else if (kind == FrameKind::SicPovm && d == 2) {
        fs.frame = sic_qubit_frame();
    } else if (kind == FrameKind::SicPovm && d == 3) {
        fs.frame = sic_qutrit_frame();
    } else {
        throw UnsupportedFrame("unsupported frame/dimension pair: " +
                               frame_kind_name(kind) + "/d=" + std::to_string(d));
    }
    if (kind == FrameKind::SicPovm) {
        fs.dual = dual_of(fs.frame);
    } else {
        // Wigner kinds: the dual is exactly d F_j.
        fs.dual.reserve(fs.frame.size());
        for (const auto& f : fs.frame) fs.dual.push_back(double(d) * f);
    }
    return fs;
}

std::vector<CMat> dual_of(const std::vector<CMat>& frame) {
    const int n = static_cast<int>(frame.size());
    if (n == 0) throw SingularFrame("empty frame");
    const int d = static_cast<int>(frame.front().rows());
    if (n != d * d)
        throw SingularFrame("frame is not minimal: expected d^2 = " +
                            std::to_string(d * d) + " operators, got " + std::to_string(n));

    RMat gram(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k)
            gram(j, k) = gram(k, j) = trace_product_re(frame[j], frame[k]);

    Eigen::SelfAdjointEigenSolver<RMat> es(gram);
    const double emax = es.eigenvalues().cwiseAbs().maxCoeff();
    const double emin = es.eigenvalues().cwiseAbs().minCoeff();
    if (emin <= 0.0 || emax / emin > 1e10)
        throw SingularFrame("frame Gram matrix is rank-deficient or ill-conditioned");

    RMat inv = es.eigenvectors() *
               es.eigenvalues().cwiseInverse().asDiagonal() *
               es.eigenvectors().transpose();

    std::vector<CMat> dual(n, CMat::Zero(d, d));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            dual[j] += inv(j, k) * frame[k];
    return dual;
}

FrameReport validate_frame(const FrameSet& fs) {
    const int n = fs.size();
    const int d = fs.d;
    FrameReport report;

    CMat sum = CMat::Zero(d, d);
    for (const auto& f : fs.frame) sum += f;
    double dev_norm = (sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff();
    report.checks.push_back({"normalization", dev_norm <= kStructuralTol, dev_norm});

    double dev_tr = 0.0;
    for (const auto& g : fs.dual)
        dev_tr = std::max(dev_tr, std::abs(g.trace() - Cplx(1.0, 0.0)));
    report.checks.push_back({"dual_trace", dev_tr <= kStructuralTol, dev_tr});

    double dev_dual = 0.0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            Cplx t = (fs.frame[j] * fs.dual[k]).trace();
            dev_dual = std::max(dev_dual, std::abs(t - (j == k ? Cplx(1) : Cplx(0))));
        }
    report.checks.push_back({"duality", dev_dual <= kStructuralTol, dev_dual});

    double dev_herm = 0.0;
    for (const auto& f : fs.frame)
        dev_herm = std::max(dev_herm, (f - f.adjoint()).cwiseAbs().maxCoeff());
    for (const auto& g : fs.dual)
        dev_herm = std::max(dev_herm, (g - g.adjoint()).cwiseAbs().maxCoeff());
    report.checks.push_back({"hermiticity", dev_herm <= kStructuralTol, dev_herm});

    // Span rank via Gram spectrum: n nonzero eigenvalues <=> frame spans Hermitian space.
    RMat gram(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k)
            gram(j, k) = gram(k, j) = trace_product_re(fs.frame[j], fs.frame[k]);
    Eigen::SelfAdjointEigenSolver<RMat> es(gram, Eigen::EigenvaluesOnly);
    const double emax = es.eigenvalues().cwiseAbs().maxCoeff();
    int rank = 0;
    for (int i = 0; i < n; ++i)
        if (es.eigenvalues()(i) > 1e-12 * std::max(1.0, emax)) ++rank;
    report.checks.push_back(
        {"span_rank", rank == n, static_cast<double>(n - rank)});

    return report;
}

} // namespace qsflow
