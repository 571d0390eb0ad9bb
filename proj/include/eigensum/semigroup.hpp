#pragma once

#include "eigensum/linalg.hpp"

namespace eigensum::semigroup {

enum class Source { direct, duhamel };

/// The semigroup difference D_t = e^{-tB} - e^{-tA} with its two scalar
/// summaries. `kernel` holds kernel values indexed (x, y): operator-matrix
/// entries divided by the cell volume, so hs_norm(kernel, cell_volume)
/// equals the basis-independent HS norm of D_t.
struct SemigroupDifference {
    double t = 0.0;
    linalg::Matrix kernel;
    double cell_volume = 1.0;
    double c1 = 0.0;  // ||D_t||_HS
    double c2 = 0.0;  // [ int ( int |D_t(u,y)| du )^2 dy ]^{1/2}, discrete
    Source source = Source::direct;

    /// Operator-matrix form (acts on coefficient vectors by plain matvec).
    linalg::Matrix op() const { return kernel * cell_volume; }
};

/// Column-mass functional: with operator matrix O and cell volume w,
/// c2 = sqrt(w) * sqrt( sum_y ( sum_u |O_uy| )^2 ). This is the exact
/// constant for which the convolution product bound and the split-chain
/// product bound are theorems in the discrete model.
double column_mass_functional(const linalg::Matrix& op_matrix,
                              double cell_volume);

SemigroupDifference semigroup_difference(const linalg::SymMatrix& a,
                                         const linalg::SymMatrix& b, double t);

/// Composite-midpoint evaluation of the integral representation
/// D_t = int_0^t e^{-sB} (A - B) e^{-(t-s)A} ds. Panels are accumulated
/// entrywise in panel order; converges to the direct difference at second
/// order in 1/steps.
SemigroupDifference duhamel_difference(const linalg::SymMatrix& a,
                                       const linalg::SymMatrix& b, double t,
                                       int steps, int workers = 0);
SemigroupDifference duhamel_difference_serial(const linalg::SymMatrix& a,
                                              const linalg::SymMatrix& b,
                                              double t, int steps);

/// Split-chain report: D_t = e^{-t/2 B} D_{t/2} + D_{t/2} e^{-t/2 A} gives
/// a triangle bound (chain_1), entrywise semigroup domination orders the
/// two halves (chain_2), and the squared dominant half is controlled by
/// the sup of the e^{-tB} kernel times c2(t/2)^2 (product_bound).
struct SplitChainReport {
    double hs_d_t;         // ||D_t||_HS
    double hs_b_half;      // ||e^{-t/2 B} D_{t/2}||_HS
    double hs_a_half;      // ||e^{-t/2 A} D_{t/2}||_HS
    double l1_linf;        // sup-kernel norm of e^{-tB}
    double c2_half;        // c2 at t/2
    bool chain_1;          // hs_d_t <= hs_b_half + hs_a_half
    bool chain_2;          // hs_a_half <= hs_b_half
    bool product_bound;    // hs_b_half^2 <= l1_linf * c2_half^2
    bool all() const { return chain_1 && chain_2 && product_bound; }
};

SplitChainReport hs_split_check(const linalg::SymMatrix& a,
                                const linalg::SymMatrix& b, double t);

}  // namespace eigensum::semigroup
