#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "eigensum/grid.hpp"
#include "eigensum/jensen.hpp"
#include "eigensum/semigroup.hpp"

namespace eigensum::bounds {

using linalg::Complex;

/// J_p(a) = int_1^inf (log s)^{p-1} / (s - a)^2 ds, p > 0, a < 1.
/// Split at s = 2; the near-pole piece is integrated in u = s - a,
/// the tail in v = 2/s. Self-validated to 1e-8 relative accuracy.
struct JpQuery {
    double p;
    double a;
};
double j_p(const JpQuery& q);

/// M(z) = |z| * || e^{-t|xi|^2} / (1 - z e^{-t|xi|^2}) ||_{L^2(R^d)},
/// reduced to a radial integral with sphere measure omega_d and computed
/// on a cubically graded mesh that resolves the near-pole at rho = 0 as
/// z -> 1. Any d >= 1.
struct MzQuery {
    int d;
    double t;
    Complex z;
};
double m_z(const MzQuery& q, int workers = 0);
double m_z_serial(const MzQuery& q);

double sphere_measure(int d);  // omega_d = 2 pi^{d/2} / Gamma(d/2)

/// Radial-reduction chain: M(z)^2 <= (omega_d |z|^2 / 2) t^{-d/2} J_{d/2}(Re z),
/// valid for Re z > 0.
struct SbChainReport {
    double lhs;
    double rhs;
    double ratio;
    bool holds;
};
SbChainReport sb_chain_check(const MzQuery& q);

/// Convolution kernel of G(z) = z e^{-tA} [I - z e^{-tA}]^{-1} on a
/// periodic grid: G acts by circular convolution with `kernel` (kernel
/// values; the operator matrix entry is cell_volume * kernel). m_discrete
/// is the cell-volume-weighted l2 norm of the kernel.
struct GzResult {
    linalg::ComplexVector kernel;
    double m_discrete;
};
GzResult discrete_gz(const grid::DiscreteOperator& a, Complex z, double t);

/// Applies the circular convolution (G f)_x = cell * sum_u g(x-u) f_u on
/// the periodic grid (multi-dimensional wrap). Used to test that the
/// kernel form matches dense application.
linalg::ComplexVector gz_apply(const grid::GridSpec& g,
                               const linalg::ComplexVector& kernel,
                               const linalg::Vector& f);

struct ProdBoundReport {
    double lhs;         // ||G(z) D_t||_HS
    double m_discrete;  // M(z), discrete
    double c2;
    double rhs;         // m_discrete * c2
    bool holds;
};
ProdBoundReport prod_bound_check(const grid::DiscreteOperator& a,
                                 const semigroup::SemigroupDifference& dt,
                                 Complex z, double t);

struct CbBoundReport {
    double log_h;
    double rhs;  // 0.5 |z|^2 (c1 + c2 M_disc)^2
    bool holds;
};
CbBoundReport cb_bound_check(const grid::DiscreteOperator& a,
                             const grid::DiscreteOperator& b, double t,
                             Complex z);

/// int_0^{2pi} log(1 / (1 - cos theta)) dtheta; equals 2 pi log 2.
double log_one_minus_cos_integral();

/// Shared spectral cache for sweeping all determinant bounds over many z
/// on one periodic-grid instance. Every quantity except log|h| itself
/// costs O(n) per z.
class BoundSweep {
public:
    BoundSweep(const grid::DiscreteOperator& a, const grid::DiscreteOperator& b,
               double t);

    struct Point {
        Complex z;
        double log_h;        // -inf at zeros of h
        double f_hs;         // ||F(z)||_HS
        double gd_hs;        // ||G(z) D_t||_HS
        double m_discrete;   // discrete M(z)
        double itt_rhs;      // 0.5 ||F||^2
        double bound_ob;     // |z| ||resolvent|| C1   (>= ||F||)
        double bound_fo;     // |z| (C1 + C2 M)        (>= ||F||)
        double cb_rhs;       // 0.5 |z|^2 (C1 + C2 M)^2
        bool itt_ok, ob_ok, fo_ok, prod_ok, cb_ok;
    };

    Point evaluate(Complex z) const;
    double c1() const { return c1_; }
    double c2() const { return c2_; }
    const jensen::Engine& engine() const { return *engine_; }

private:
    std::unique_ptr<jensen::Engine> engine_;
    double c1_;
    double c2_;
    double cell_;
};

}  // namespace eigensum::bounds
