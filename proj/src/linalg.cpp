#include "eigensum/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace eigensum::linalg {

namespace {

bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace

SymMatrix::SymMatrix(Matrix entries, double basis_weight)
    : entries_(std::move(entries)), basis_weight_(basis_weight) {
    if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
        throw std::invalid_argument("SymMatrix: need square matrix with n >= 1");
    }
    if (!all_finite(entries_)) {
        throw std::invalid_argument("SymMatrix: non-finite entries");
    }
    if (!(basis_weight_ > 0.0)) {
        throw std::invalid_argument("SymMatrix: basis_weight must be > 0");
    }
    entries_ = 0.5 * (entries_ + entries_.transpose()).eval();
}

EigenDecomp eigh(const SymMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.entries());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigh: eigensolver failed to converge");
    }
    EigenDecomp d{solver.eigenvalues(), solver.eigenvectors()};

    const int n = m.n();
    const double ortho =
        (d.vectors.transpose() * d.vectors - Matrix::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();
    if (ortho > 1e-10) {
        throw std::runtime_error("eigh: eigenvector basis lost orthonormality");
    }
    const double scale = 1.0 + m.entries().cwiseAbs().maxCoeff();
    const double recon =
        (d.vectors * d.values.asDiagonal() * d.vectors.transpose() -
         m.entries())
            .cwiseAbs()
            .maxCoeff();
    if (recon > 1e-8 * scale) {
        throw std::runtime_error("eigh: reconstruction residual too large");
    }
    return d;
}

Matrix expm_from(const EigenDecomp& decomp, double t) {
    if (!(t >= 0.0)) {
        throw std::domain_error("expm_sym: t must be >= 0");
    }
    const int n = static_cast<int>(decomp.values.size());
    if (t == 0.0) return Matrix::Identity(n, n);
    Vector e = (-t * decomp.values.array()).exp().matrix();
    Matrix r = decomp.vectors * e.asDiagonal() * decomp.vectors.transpose();
    return 0.5 * (r + r.transpose()).eval();
}

SymMatrix expm_sym(const SymMatrix& m, double t) {
    return SymMatrix(expm_from(eigh(m), t), m.basis_weight());
}

Det2Result det2_log(const ComplexMatrix& t_mat) {
    if (!t_mat.allFinite()) {
        throw std::invalid_argument("det2_log: non-finite entries");
    }
    const int n = static_cast<int>(t_mat.rows());
    ComplexMatrix a = ComplexMatrix::Identity(n, n) - t_mat;
    Eigen::PartialPivLU<ComplexMatrix> lu(a);

    // |det| and arg(det) from the U diagonal, log-magnitudes accumulated
    // pivot by pivot so nothing overflows.
    double log_abs_det = 0.0;
    double arg = 0.0;
    bool singular = false;
    const auto& u_diag = lu.matrixLU().diagonal();
    for (int i = 0; i < n; ++i) {
        const double mag = std::abs(u_diag(i));
        if (mag < 1e-300) {
            singular = true;
            break;
        }
        log_abs_det += std::log(mag);
        arg += std::arg(u_diag(i));
    }
    const Complex tr = t_mat.trace();
    if (singular) {
        return {-std::numeric_limits<double>::infinity(), 0.0, tr, true};
    }
    if (lu.permutationP().determinant() < 0) arg += 3.14159265358979323846;
    // reduce to the principal branch
    arg = std::remainder(arg, 2.0 * 3.14159265358979323846);
    return {log_abs_det + tr.real(), arg, tr, false};
}

Complex log_det2(const ComplexMatrix& t_mat) {
    return det2_log(t_mat).log_value();
}

ComplexMatrix solve_complex(const ComplexMatrix& m, const ComplexMatrix& rhs) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("solve_complex: matrix must be square");
    }
    if (m.rows() != rhs.rows()) {
        throw std::invalid_argument("solve_complex: rhs row count mismatch");
    }
    Eigen::PartialPivLU<ComplexMatrix> lu(m);
    const auto& u_diag = lu.matrixLU().diagonal();
    for (int i = 0; i < static_cast<int>(m.rows()); ++i) {
        if (std::abs(u_diag(i)) < 1e-300) {
            throw SingularSystemError(
                i, "solve_complex: singular system, pivot " + std::to_string(i));
        }
    }
    return lu.solve(rhs);
}

double hs_norm(const Matrix& m, double weight) {
    if (!(weight > 0.0)) {
        throw std::domain_error("hs_norm: weight must be > 0");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument("hs_norm: non-finite entries");
    }
    return weight * m.norm();
}

double hs_norm(const ComplexMatrix& m, double weight) {
    if (!(weight > 0.0)) {
        throw std::domain_error("hs_norm: weight must be > 0");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument("hs_norm: non-finite entries");
    }
    return weight * m.norm();
}

}  // namespace eigensum::linalg
