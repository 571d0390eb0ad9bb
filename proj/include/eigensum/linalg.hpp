#pragma once

#include <complex>

#include <Eigen/Dense>

#include "eigensum/errors.hpp"

namespace eigensum::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Dense real symmetric matrix. Symmetrized at construction; carries the
/// grid cell volume (basis weight) that converts entry sums into integral
/// analogs. basis_weight = 1 for plain matrices.
class SymMatrix {
public:
    explicit SymMatrix(Matrix entries, double basis_weight = 1.0);

    int n() const { return static_cast<int>(entries_.rows()); }
    const Matrix& entries() const { return entries_; }
    double basis_weight() const { return basis_weight_; }

private:
    Matrix entries_;
    double basis_weight_;
};

/// Spectral decomposition A = Q diag(values) Q^T with values ascending and
/// Q orthonormal. Construction verifies orthonormality to 1e-10 and
/// reconstruction to 1e-8 relative.
struct EigenDecomp {
    Vector values;
    Matrix vectors;
};

EigenDecomp eigh(const SymMatrix& m);

/// exp(-t * m) through the eigendecomposition; the decomposition can be
/// reused across a whole t-schedule.
Matrix expm_from(const EigenDecomp& decomp, double t);
SymMatrix expm_sym(const SymMatrix& m, double t);

/// log Det2(I - T) = log det(I - T) + tr T, with pivot magnitudes
/// accumulated in log space. A vanishing pivot is not an error: it marks a
/// zero of the determinant and is reported through the sentinel.
struct Det2Result {
    double log_abs;   // log|Det2(I - T)|, -inf when singular
    double arg_det;   // principal argument of det(I - T)
    Complex trace;    // tr T
    bool singular;

    /// (log|h|, argument branch) as a single complex value.
    Complex log_value() const {
        return {log_abs, arg_det + trace.imag()};
    }
};

Det2Result det2_log(const ComplexMatrix& t_mat);
Complex log_det2(const ComplexMatrix& t_mat);

/// Dense complex solve M X = rhs. Throws SingularSystemError carrying the
/// pivot index when M is numerically singular.
ComplexMatrix solve_complex(const ComplexMatrix& m, const ComplexMatrix& rhs);

/// Discrete Hilbert-Schmidt norm: weight * sqrt(sum |entries|^2). With
/// weight equal to the cell volume this turns kernel-value matrices into
/// the integral-analog HS norm; operator matrices use weight 1.
double hs_norm(const Matrix& m, double weight);
double hs_norm(const ComplexMatrix& m, double weight);

}  // namespace eigensum::linalg
