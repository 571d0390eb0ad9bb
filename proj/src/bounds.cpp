#include "eigensum/bounds.hpp"

#include <cmath>

#include "eigensum/quadrature.hpp"

namespace eigensum::bounds {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool relative_slack_ok(double lhs, double rhs, double slack = 1e-9) {
    return lhs <= rhs + slack * (1.0 + std::abs(rhs));
}

double j_p_at_tolerance(double p, double a, double tol) {
    // near-pole piece on [1, 2] in u = s - a
    const double lo = 1.0 - a;
    const double hi = 2.0 - a;
    const double head = quad::adaptive(
        [p, a](double u) {
            const double ls = std::log(u + a);
            return std::pow(ls, p - 1.0) / (u * u);
        },
        lo, hi, 0.0, tol);
    // tail in v = 2/s: ds/(s-a)^2 = 2 dv / (2 - a v)^2
    const double tail = quad::adaptive(
        [p, a](double v) {
            const double denom = 2.0 - a * v;
            return 2.0 * std::pow(std::log(2.0 / v), p - 1.0) / (denom * denom);
        },
        0.0, 1.0, 0.0, tol);
    return head + tail;
}

}  // namespace

double j_p(const JpQuery& q) {
    if (!(q.p > 0.0)) throw std::domain_error("j_p: p must be > 0");
    if (!(q.a < 1.0)) throw std::domain_error("j_p: a must be < 1");
    const double coarse = j_p_at_tolerance(q.p, q.a, 1e-9);
    const double fine = j_p_at_tolerance(q.p, q.a, 5e-10);
    if (std::abs(coarse - fine) > 1e-8 * std::max(1.0, std::abs(fine))) {
        throw NonConvergenceError("j_p: halving the tolerance moved the value",
                                  "coarse " + std::to_string(coarse) +
                                      " fine " + std::to_string(fine));
    }
    return fine;
}

double sphere_measure(int d) {
    return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

namespace {

double mz_integral(const MzQuery& q, int cells, int workers, bool serial) {
    const double t = q.t;
    const Complex z = q.z;
    const double rho_max = std::sqrt(60.0 / t);
    auto integrand = [d = q.d, t, z](double rho) {
        const double e = std::exp(-t * rho * rho);
        const double re = 1.0 - z.real() * e;
        const double im = z.imag() * e;
        return std::pow(rho, d - 1) * e * e / (re * re + im * im);
    };
    return serial ? quad::graded_composite_serial(integrand, 0.0, rho_max,
                                                  cells, 3.0)
                  : quad::graded_composite(integrand, 0.0, rho_max, cells, 3.0,
                                           workers);
}

double m_z_impl(const MzQuery& q, int workers, bool serial) {
    if (q.d < 1) throw std::domain_error("m_z: d must be >= 1");
    if (!(q.t > 0.0)) throw std::domain_error("m_z: t must be > 0");
    if (std::abs(q.z) >= 1.0) throw std::domain_error("m_z: |z| must be < 1");
    if (q.z == Complex(0.0, 0.0)) return 0.0;

    // start the mesh fine enough to see the near-pole peak at rho = 0
    const double pole_dist = std::max(std::abs(1.0 - q.z), 1e-14);
    const double peak_width = std::sqrt(pole_dist / q.t);
    const double rho_max = std::sqrt(60.0 / q.t);
    int cells = 64;
    while (cells < 1 << 14 &&
           rho_max * 24.0 / (static_cast<double>(cells) * cells * cells) >
               peak_width) {
        cells *= 2;
    }

    double prev = mz_integral(q, cells, workers, serial);
    for (cells *= 2; cells <= (1 << 21); cells *= 2) {
        const double cur = mz_integral(q, cells, workers, serial);
        if (std::abs(cur - prev) <= 1e-9 * std::max(std::abs(cur), 1e-300)) {
            return std::abs(q.z) * std::sqrt(sphere_measure(q.d) * cur);
        }
        prev = cur;
    }
    throw NonConvergenceError("m_z: graded mesh did not stabilize",
                              "d=" + std::to_string(q.d));
}

}  // namespace

double m_z(const MzQuery& q, int workers) { return m_z_impl(q, workers, false); }

double m_z_serial(const MzQuery& q) { return m_z_impl(q, 1, true); }

SbChainReport sb_chain_check(const MzQuery& q) {
    if (!(q.z.real() > 0.0)) {
        throw std::domain_error("sb_chain_check: Re(z) must be > 0");
    }
    const double m = m_z(q);
    const double lhs = m * m;
    const double rhs = sphere_measure(q.d) * std::norm(q.z) / 2.0 *
                       std::pow(q.t, -0.5 * q.d) *
                       j_p({0.5 * q.d, q.z.real()});
    return {lhs, rhs, lhs / rhs, relative_slack_ok(lhs, rhs)};
}

GzResult discrete_gz(const grid::DiscreteOperator& a, Complex z, double t) {
    if (a.grid.boundary != grid::Boundary::periodic) {
        throw std::invalid_argument(
            "discrete_gz: operator must live on a periodic grid");
    }
    if (std::abs(z) >= 1.0) throw std::domain_error("discrete_gz: |z| must be < 1");
    const auto d = linalg::eigh(a.matrix);
    const int n = a.matrix.n();
    const double cell = a.grid.cell_volume();

    linalg::ComplexVector ghat(n);
    for (int k = 0; k < n; ++k) {
        const double e = std::exp(-t * d.values(k));
        ghat(k) = z * e / (1.0 - z * e);
    }
    // first column of G = Q diag(ghat) Q^T, then kernel = column / cell
    linalg::ComplexVector col0 =
        d.vectors.cast<Complex>() *
        (ghat.array() * d.vectors.row(0).transpose().cast<Complex>().array())
            .matrix();
    GzResult out;
    out.kernel = col0 / cell;
    out.m_discrete = std::sqrt(cell) * out.kernel.norm();
    return out;
}

linalg::ComplexVector gz_apply(const grid::GridSpec& g,
                               const linalg::ComplexVector& kernel,
                               const linalg::Vector& f) {
    const int n = g.total_points();
    const int na = g.points_per_axis;
    const double cell = g.cell_volume();
    auto decompose = [&](int flat, int* coord) {
        for (int axis = g.d - 1; axis >= 0; --axis) {
            coord[axis] = flat % na;
            flat /= na;
        }
    };
    linalg::ComplexVector out(n);
    for (int x = 0; x < n; ++x) {
        int cx[3] = {0, 0, 0};
        decompose(x, cx);
        Complex acc(0.0, 0.0);
        for (int u = 0; u < n; ++u) {
            int cu[3] = {0, 0, 0};
            decompose(u, cu);
            int flat = 0;
            for (int axis = 0; axis < g.d; ++axis) {
                const int w = ((cx[axis] - cu[axis]) % na + na) % na;
                flat = flat * na + w;
            }
            acc += kernel(flat) * f(u);
        }
        out(x) = cell * acc;
    }
    return out;
}

ProdBoundReport prod_bound_check(const grid::DiscreteOperator& a,
                                 const semigroup::SemigroupDifference& dt,
                                 Complex z, double t) {
    const auto gz = discrete_gz(a, z, t);
    const auto d = linalg::eigh(a.matrix);
    const int n = a.matrix.n();
    linalg::ComplexVector ghat(n);
    for (int k = 0; k < n; ++k) {
        const double e = std::exp(-t * d.values(k));
        ghat(k) = z * e / (1.0 - z * e);
    }
    const linalg::ComplexMatrix g_op = d.vectors.cast<Complex>() *
                                       ghat.asDiagonal() *
                                       d.vectors.transpose().cast<Complex>();
    const double lhs = linalg::hs_norm((g_op * dt.op().cast<Complex>()).eval(), 1.0);
    ProdBoundReport r;
    r.lhs = lhs;
    r.m_discrete = gz.m_discrete;
    r.c2 = dt.c2;
    r.rhs = gz.m_discrete * dt.c2;
    r.holds = relative_slack_ok(lhs, r.rhs);
    return r;
}

CbBoundReport cb_bound_check(const grid::DiscreteOperator& a,
                             const grid::DiscreteOperator& b, double t,
                             Complex z) {
    BoundSweep sweep(a, b, t);
    const auto p = sweep.evaluate(z);
    return {p.log_h, p.cb_rhs, p.cb_ok};
}

double log_one_minus_cos_integral() {
    // 1 - cos(theta) = 2 sin^2(theta/2); the sine form stays accurate at
    // the integrable log singularity theta -> 0
    auto integrand = [](double theta) {
        return -std::log(2.0) - 2.0 * std::log(std::sin(0.5 * theta));
    };
    // symmetric about pi
    const double half = quad::adaptive(integrand, 0.0, kPi, 1e-12, 1e-11);
    return 2.0 * half;
}

BoundSweep::BoundSweep(const grid::DiscreteOperator& a,
                       const grid::DiscreteOperator& b, double t) {
    if (a.grid.boundary != grid::Boundary::periodic) {
        throw std::invalid_argument(
            "BoundSweep: bounds with G(z) need a periodic grid");
    }
    const auto dt = semigroup::semigroup_difference(a.matrix, b.matrix, t);
    c1_ = dt.c1;
    c2_ = dt.c2;
    cell_ = a.grid.cell_volume();
    engine_ = std::make_unique<jensen::Engine>(a.matrix, dt, t);
}

BoundSweep::Point BoundSweep::evaluate(Complex z) const {
    const auto& eng = *engine_;
    Point p{};
    p.z = z;
    p.log_h = eng.log_h(z);
    p.f_hs = eng.f_hs_norm(z);

    const int n = eng.n();
    double gd_sq = 0.0;
    double m_sq = 0.0;
    for (int k = 0; k < n; ++k) {
        const double e = eng.exp_values()(k);
        const double g2 = std::norm(z * e / (1.0 - z * e));
        gd_sq += g2 * eng.d_row_sq()(k);
        m_sq += g2 * eng.q_row0_sq()(k);
    }
    p.gd_hs = std::sqrt(gd_sq);
    p.m_discrete = std::sqrt(m_sq / cell_);

    const double az = std::abs(z);
    p.itt_rhs = 0.5 * p.f_hs * p.f_hs;
    p.bound_ob = az * eng.resolvent_norm(z) * c1_;
    p.bound_fo = az * (c1_ + c2_ * p.m_discrete);
    p.cb_rhs = 0.5 * az * az * (c1_ + c2_ * p.m_discrete) *
               (c1_ + c2_ * p.m_discrete);

    p.itt_ok = relative_slack_ok(p.log_h, p.itt_rhs);
    p.ob_ok = relative_slack_ok(p.f_hs, p.bound_ob);
    p.fo_ok = relative_slack_ok(p.f_hs, az * (c1_ + p.gd_hs));
    p.prod_ok = relative_slack_ok(p.gd_hs, p.m_discrete * c2_);
    p.cb_ok = relative_slack_ok(p.log_h, p.cb_rhs);
    return p;
}

}  // namespace eigensum::bounds
