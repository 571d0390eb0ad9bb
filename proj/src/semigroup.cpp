#include "eigensum/semigroup.hpp"

#include <cmath>
#include <stdexcept>

#include "eigensum/parallel.hpp"

namespace eigensum::semigroup {

using linalg::Matrix;
using linalg::SymMatrix;

namespace {

void check_pair(const SymMatrix& a, const SymMatrix& b, double t) {
    if (a.n() != b.n()) {
        throw std::invalid_argument("semigroup difference: size mismatch");
    }
    if (a.basis_weight() != b.basis_weight()) {
        throw std::invalid_argument("semigroup difference: grid mismatch");
    }
    if (!(t > 0.0)) {
        throw std::domain_error("semigroup difference: t must be > 0");
    }
}

SemigroupDifference finish(Matrix d_op, double t, double cell, Source source) {
    SemigroupDifference out;
    out.t = t;
    out.cell_volume = cell;
    out.c1 = linalg::hs_norm(d_op, 1.0);
    out.c2 = column_mass_functional(d_op, cell);
    out.kernel = d_op / cell;
    out.source = source;
    return out;
}

}  // namespace

double column_mass_functional(const Matrix& op_matrix, double cell_volume) {
    double sum_sq = 0.0;
    for (Eigen::Index y = 0; y < op_matrix.cols(); ++y) {
        const double mass = op_matrix.col(y).cwiseAbs().sum();
        sum_sq += mass * mass;
    }
    return std::sqrt(cell_volume * sum_sq);
}

SemigroupDifference semigroup_difference(const SymMatrix& a, const SymMatrix& b,
                                         double t) {
    check_pair(a, b, t);
    Matrix d_op = linalg::expm_sym(b, t).entries() - linalg::expm_sym(a, t).entries();
    return finish(std::move(d_op), t, a.basis_weight(), Source::direct);
}

namespace {

// Shared panel accumulation: with A = Qa La Qa^T, B = Qb Lb Qb^T and
// V' = Qb^T (A - B) Qa, the midpoint sum is
//   D ~ h_s * Qb [ sum_k exp(-s_k Lb) o V' o exp(-(t-s_k) La) ] Qa^T,
// an entrywise-independent reduction over panels.
struct DuhamelPlan {
    linalg::EigenDecomp ea, eb;
    Matrix v_prime;
    double t;
    int steps;

    DuhamelPlan(const SymMatrix& a, const SymMatrix& b, double t_, int steps_)
        : ea(linalg::eigh(a)), eb(linalg::eigh(b)),
          v_prime(eb.vectors.transpose() * (a.entries() - b.entries()) *
                  ea.vectors),
          t(t_), steps(steps_) {}

    Matrix assemble(const Matrix& acc) const {
        const double hs = t / steps;
        Matrix d = eb.vectors * (hs * acc) * ea.vectors.transpose();
        return 0.5 * (d + d.transpose()).eval();
    }
};

}  // namespace

SemigroupDifference duhamel_difference(const SymMatrix& a, const SymMatrix& b,
                                       double t, int steps, int workers) {
    check_pair(a, b, t);
    if (steps < 2) throw std::domain_error("duhamel_difference: steps must be >= 2");
    DuhamelPlan plan(a, b, t, steps);
    const int n = a.n();
    const double hs = t / steps;

    Matrix acc(n, n);
    par::parallel_for(n, workers, [&](std::int64_t i) {
        for (int j = 0; j < n; ++j) {
            const double lb = plan.eb.values(static_cast<int>(i));
            const double la = plan.ea.values(j);
            double cell = 0.0;
            for (int k = 0; k < steps; ++k) {
                const double s = (k + 0.5) * hs;
                cell += std::exp(-s * lb - (t - s) * la);
            }
            acc(static_cast<int>(i), j) = cell * plan.v_prime(static_cast<int>(i), j);
        }
    });
    auto out = finish(plan.assemble(acc), t, a.basis_weight(), Source::duhamel);
    return out;
}

SemigroupDifference duhamel_difference_serial(const SymMatrix& a,
                                              const SymMatrix& b, double t,
                                              int steps) {
    check_pair(a, b, t);
    if (steps < 2) throw std::domain_error("duhamel_difference: steps must be >= 2");
    DuhamelPlan plan(a, b, t, steps);
    const int n = a.n();
    const double hs = t / steps;

    Matrix acc(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double lb = plan.eb.values(i);
            const double la = plan.ea.values(j);
            double cell = 0.0;
            for (int k = 0; k < steps; ++k) {
                const double s = (k + 0.5) * hs;
                cell += std::exp(-s * lb - (t - s) * la);
            }
            acc(i, j) = cell * plan.v_prime(i, j);
        }
    }
    auto out = finish(plan.assemble(acc), t, a.basis_weight(), Source::duhamel);
    return out;
}

SplitChainReport hs_split_check(const SymMatrix& a, const SymMatrix& b,
                                double t) {
    check_pair(a, b, t);
    const auto ea = linalg::eigh(a);
    const auto eb = linalg::eigh(b);
    const Matrix ea_half = linalg::expm_from(ea, 0.5 * t);
    const Matrix eb_half = linalg::expm_from(eb, 0.5 * t);
    const Matrix eb_full = linalg::expm_from(eb, t);
    const Matrix d_half = eb_half - ea_half;
    const Matrix d_full = eb_full - linalg::expm_from(ea, t);

    SplitChainReport r{};
    r.hs_d_t = linalg::hs_norm(d_full, 1.0);
    r.hs_b_half = linalg::hs_norm((eb_half * d_half).eval(), 1.0);
    r.hs_a_half = linalg::hs_norm((ea_half * d_half).eval(), 1.0);
    const double cell = a.basis_weight();
    r.l1_linf = eb_full.cwiseAbs().maxCoeff() / cell;
    r.c2_half = column_mass_functional(d_half, cell);

    const double slack = 1e-10;
    auto leq = [slack](double lhs, double rhs) {
        return lhs <= rhs + slack * (1.0 + std::abs(rhs));
    };
    r.chain_1 = leq(r.hs_d_t, r.hs_b_half + r.hs_a_half);
    r.chain_2 = leq(r.hs_a_half, r.hs_b_half);
    r.product_bound = leq(r.hs_b_half * r.hs_b_half,
                          r.l1_linf * r.c2_half * r.c2_half);
    return r;
}

}  // namespace eigensum::semigroup
