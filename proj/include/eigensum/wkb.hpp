#pragma once

#include <vector>

#include "eigensum/linalg.hpp"

namespace eigensum::wkb {

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag, off)
/// strictly below x, from the signs of the LDL^T pivots.
int sturm_count_below(const std::vector<double>& diag,
                      const std::vector<double>& off, double x);

/// All eigenvalues below `bound`, each found by Sturm bisection.
/// Independent brackets run in parallel; results are deterministic.
std::vector<double> tridiag_eigenvalues_below(const std::vector<double>& diag,
                                              const std::vector<double>& off,
                                              double bound, int workers = 0);

/// The slowly decaying well V(x) = -(1+|x|)^{-alpha} on [-L, L], Dirichlet,
/// n grid points.
struct SlowWell {
    double alpha;
    double extent;
    int n;
    std::vector<double> diag;
    std::vector<double> off;
};
SlowWell slow_well_operator(double alpha, double extent, int n);

/// Negative spectrum of the slowly decaying well by Sturm bisection
/// (independent of the dense route used elsewhere). Returns at most
/// `count` eigenvalues, ascending; empty when there are no bound states.
std::vector<double> shooting_eigen(double alpha, double extent, int n,
                                   int count, int workers = 0);

struct WkbSweep {
    double alpha = 0.0;
    double extent = 0.0;
    int n = 0;
    std::vector<double> eigenvalues;    // ascending, all < 0
    std::vector<double> partial_sums;   // cumulative sum of |lambda|
    double fitted_exponent = 0.0;       // log|lambda_k| vs log k, middle third
    double predicted_exponent = 0.0;    // -2 alpha / (2 - alpha)
    double sum_growth_exponent = 0.0;   // log S_k vs log k over the tail
    double sum_growth_r2 = 0.0;
    bool resolution_ok = false;         // >= 30 resolved bound states
    double suggested_extent = 0.0;      // advisory when resolution fails
    int suggested_n = 0;
};

/// Eigenvalue sweep of the slowly decaying well: the fitted decay exponent
/// of |lambda_k| is compared against the semiclassical prediction
/// -2 alpha / (2 - alpha); the partial sums expose (non-)summability.
WkbSweep wkb_sweep(double alpha, double extent, int n, int workers = 0);

/// True iff (1+|x|)^{-alpha} is square integrable (2 alpha > 1); the rule
/// is cross-checked against the quadrature tail fit.
bool l2_membership(double alpha);

/// Fitted decay exponent of the expanding-domain quadrature increments of
/// (1+|x|)^{-2 alpha}; negative means a convergent integral.
double l2_tail_exponent(double alpha);

}  // namespace eigensum::wkb
