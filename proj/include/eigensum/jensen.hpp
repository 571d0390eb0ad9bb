#pragma once

#include <vector>

#include "eigensum/linalg.hpp"
#include "eigensum/semigroup.hpp"

namespace eigensum::jensen {

using linalg::Complex;
using linalg::ComplexMatrix;

/// Precomputed spectral data for one (A, D_t) pair. The resolvent
/// [I - z e^{-tA}]^{-1} is applied through the eigenbasis of A, which is
/// exact on the diagonal and stays well conditioned for |z| < 1; the
/// determinant is still taken from an honest complex LU of I - F(z).
class Engine {
public:
    Engine(const linalg::SymMatrix& a, const semigroup::SemigroupDifference& dt,
           double t);

    int n() const { return static_cast<int>(mu_.size()); }
    double t() const { return t_; }
    const linalg::Vector& a_values() const { return mu_; }
    const linalg::Vector& exp_values() const { return exp_mu_; }
    /// Squared row norms of Q^T D Q (Q the eigenbasis of A).
    const linalg::Vector& d_row_sq() const { return w_row_sq_; }
    /// Squared entries of the first row of Q.
    const linalg::Vector& q_row0_sq() const { return q_row0_sq_; }

    /// F(z) = z [I - z e^{-tA}]^{-1} D_t. Domain |z| < 1.
    ComplexMatrix f_of_z(Complex z) const;

    /// Frobenius (= Hilbert-Schmidt) norm of F(z), computed in O(n) from
    /// the precomputed row norms of Q^T D.
    double f_hs_norm(Complex z) const;

    /// Spectral norm of [I - z e^{-tA}]^{-1}.
    double resolvent_norm(Complex z) const;

    struct LogHSample {
        double log_abs;  // log|h(z)|, -inf at a zero of h
        double arg_det;  // principal argument of det(I - F(z))
        bool singular;
    };
    LogHSample log_h_sample(Complex z) const;

    /// log|h(z)| with the -inf sentinel at zeros.
    double log_h(Complex z) const;

    /// log|det(I - z e^{-tB})|, evaluated through the same LU of I - F(z).
    /// Has the same circle averages and winding as log|h| but no
    /// near-boundary spikes from small eigenvalues of A; this is what the
    /// radius walk integrates.
    LogHSample regularized_sample(Complex z) const;

private:
    double t_;
    linalg::Vector mu_;          // eigenvalues of A, ascending
    linalg::Matrix q_;           // eigenvectors of A
    linalg::Matrix w_;           // Q^T D Q
    linalg::Vector w_row_sq_;    // squared row norms of W
    linalg::Vector exp_mu_;      // e^{-t mu_k}
    linalg::Vector q_row0_sq_;   // squared first-row entries of Q
};

/// One circle of log|h| samples at radius r with `theta_count` uniform
/// angles (power of two, >= 16). Conjugate symmetry of h for real data
/// halves the evaluations. The winding number of det(I - F) along the
/// circle counts enclosed zeros with multiplicity.
struct JensenEvaluation {
    double t = 0.0;
    double r = 0.0;
    int theta_count = 0;
    std::vector<double> samples;   // log|h| at theta_j, j = 0..theta_count/2
    double circle_average = 0.0;   // trapezoid = arithmetic mean over the circle
    int zero_hits = 0;             // -inf sentinels encountered (before retry)
    int winding = 0;               // argument-principle zero count
    double r_used = 0.0;           // final radius after any perturbation
    bool converged = true;         // adaptive refinement stabilized
};

JensenEvaluation jensen_circle(const Engine& engine, double r, int theta_count,
                               int workers = 0);
JensenEvaluation jensen_circle_serial(const Engine& engine, double r,
                                      int theta_count);

/// Doubles theta_count until the circle average stabilizes to rel 1e-10
/// and the winding count repeats. Reuses previously evaluated angles.
JensenEvaluation jensen_circle_adaptive(const Engine& engine, double r,
                                        int theta_start, int theta_max,
                                        int workers = 0);

struct RadiusSchedule {
    int k_min = 2;   // r_k = 1 - 2^{-k}
    int k_max = 40;
    int theta_start = 64;
    int theta_max = 1 << 16;
    double stabilize_tol = 1e-8;
};

enum class Correction { none, zero_count };

struct EigensumResult {
    double jensen_sum = 0.0;
    double direct_sum = 0.0;
    std::vector<double> radii_used;
    Correction correction_applied = Correction::none;
    double relative_gap = 0.0;
    int zero_count = 0;
    double t = 0.0;
};

/// Reconstructs the negative-eigenvalue sum of B from circle averages of
/// log|h|: for finite matrices the circle identity is exact once every
/// zero is enclosed, so the r -> 1 limit is replaced by the closed-form
/// correction  sum = (average - N log r) / t  with N from the winding
/// count. Walks the radius schedule until two successive corrected
/// estimates agree.
EigensumResult eigensum_jensen(const linalg::SymMatrix& a,
                               const linalg::SymMatrix& b, double t,
                               const RadiusSchedule& schedule = {},
                               int workers = 0);

/// Default time step: resolves the decay of e^{-tA} without overflowing
/// e^{-tB} (t chosen so that t * lambda_max(A) is about 20).
double default_time_step(const linalg::SymMatrix& a);

struct ZeroCluster {
    double eigenvalue;   // representative (cluster mean)
    int multiplicity;    // eigenvalues within 1e-9 are merged
    double h_at_zero;    // |h(e^{t lambda})|
    double lipschitz;    // local |h'| scale
    bool small_enough;   // |h| <= 1e-7 (1 + lipschitz)
};

struct ZeroCorrespondenceReport {
    std::vector<ZeroCluster> clusters;
    int negative_count = 0;   // eigenvalues of B below -1e-12
    int winding_count = 0;    // argument-principle count inside the
                              // circle enclosing all e^{t lambda}
    double enclosing_radius = 0.0;
    bool counts_match = false;
    bool all_values_small = false;
    bool ok() const { return counts_match && all_values_small; }
};

/// Verifies that zeros of h and negative eigenvalues of B coincide with
/// multiplicity.
ZeroCorrespondenceReport zero_correspondence_check(const linalg::SymMatrix& a,
                                                   const linalg::SymMatrix& b,
                                                   double t, int workers = 0);

}  // namespace eigensum::jensen
