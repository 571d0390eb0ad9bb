#include "eigensum/wkb.hpp"

#include <algorithm>
#include <cmath>

#include "eigensum/fit.hpp"
#include "eigensum/parallel.hpp"
#include "eigensum/quadrature.hpp"

namespace eigensum::wkb {

int sturm_count_below(const std::vector<double>& diag,
                      const std::vector<double>& off, double x) {
    const std::size_t n = diag.size();
    int count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double off2 = i == 0 ? 0.0 : off[i - 1] * off[i - 1];
        d = (diag[i] - x) - off2 / d;
        if (d == 0.0) d = -1e-300;
        if (d < 0.0) ++count;
    }
    return count;
}

std::vector<double> tridiag_eigenvalues_below(const std::vector<double>& diag,
                                              const std::vector<double>& off,
                                              double bound, int workers) {
    // Gershgorin lower bound
    double lo = diag[0];
    for (std::size_t i = 0; i < diag.size(); ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(off[i - 1]);
        if (i + 1 < diag.size()) radius += std::abs(off[i]);
        lo = std::min(lo, diag[i] - radius);
    }
    const int m = sturm_count_below(diag, off, bound);
    std::vector<double> eig(static_cast<std::size_t>(m));
    const double scale = std::max(std::abs(lo), std::abs(bound)) + 1.0;
    par::parallel_for(m, workers, [&](std::int64_t k) {
        double a = lo, b = bound;
        while (b - a > 1e-14 * scale) {
            const double mid = 0.5 * (a + b);
            if (sturm_count_below(diag, off, mid) > static_cast<int>(k)) {
                b = mid;
            } else {
                a = mid;
            }
        }
        eig[static_cast<std::size_t>(k)] = 0.5 * (a + b);
    });
    return eig;
}

SlowWell slow_well_operator(double alpha, double extent, int n) {
    if (!(alpha > 0.0 && alpha < 2.0)) {
        throw std::domain_error("slow well: alpha must lie in (0, 2)");
    }
    if (!(extent > 0.0) || n < 3) {
        throw std::domain_error("slow well: need extent > 0 and n >= 3");
    }
    SlowWell w;
    w.alpha = alpha;
    w.extent = extent;
    w.n = n;
    const double h = 2.0 * extent / (n - 1);
    const double inv_h2 = 1.0 / (h * h);
    w.diag.resize(static_cast<std::size_t>(n));
    w.off.assign(static_cast<std::size_t>(n - 1), -inv_h2);
    for (int i = 0; i < n; ++i) {
        const double x = -extent + i * h;
        w.diag[static_cast<std::size_t>(i)] =
            2.0 * inv_h2 - std::pow(1.0 + std::abs(x), -alpha);
    }
    return w;
}

std::vector<double> shooting_eigen(double alpha, double extent, int n,
                                   int count, int workers) {
    if (count < 1) throw std::domain_error("shooting_eigen: count must be >= 1");
    const auto w = slow_well_operator(alpha, extent, n);
    auto eig = tridiag_eigenvalues_below(w.diag, w.off, -1e-12, workers);
    if (static_cast<int>(eig.size()) > count) {
        eig.resize(static_cast<std::size_t>(count));
    }
    return eig;
}

WkbSweep wkb_sweep(double alpha, double extent, int n, int workers) {
    const auto w = slow_well_operator(alpha, extent, n);
    WkbSweep sweep;
    sweep.alpha = alpha;
    sweep.extent = extent;
    sweep.n = n;
    sweep.predicted_exponent = -2.0 * alpha / (2.0 - alpha);
    sweep.eigenvalues = tridiag_eigenvalues_below(w.diag, w.off, -1e-12, workers);
    const std::size_t m = sweep.eigenvalues.size();

    sweep.partial_sums.resize(m);
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        acc += std::abs(sweep.eigenvalues[k]);
        sweep.partial_sums[k] = acc;
    }

    sweep.resolution_ok = m >= 30;
    if (!sweep.resolution_ok) {
        sweep.suggested_extent = 4.0 * extent;
        sweep.suggested_n = 4 * n;
    }

    if (m >= 6) {
        // decay exponent over the stable middle third of the index range
        const std::size_t lo = m / 3;
        const std::size_t hi = 2 * m / 3;
        std::vector<double> ks, vals;
        for (std::size_t k = lo; k < hi; ++k) {
            ks.push_back(static_cast<double>(k + 1));
            vals.push_back(std::abs(sweep.eigenvalues[k]));
        }
        sweep.fitted_exponent = fit::loglog(ks, vals).slope;

        std::vector<double> ks2, sums;
        for (std::size_t k = lo; k < m; ++k) {
            ks2.push_back(static_cast<double>(k + 1));
            sums.push_back(sweep.partial_sums[k]);
        }
        const auto g = fit::loglog(ks2, sums);
        sweep.sum_growth_exponent = g.slope;
        sweep.sum_growth_r2 = g.r2;
    }
    return sweep;
}

double l2_tail_exponent(double alpha) {
    // increments of int_{-X}^{X} (1+|x|)^{-2 alpha} dx over doubling X
    std::vector<double> xs, increments;
    double prev = 0.0;
    for (int j = 0; j <= 14; ++j) {
        const double x_hi = std::pow(2.0, j + 4);
        const double cur = 2.0 * quad::adaptive(
                                     [alpha](double x) {
                                         return std::pow(1.0 + x, -2.0 * alpha);
                                     },
                                     0.0, x_hi, 1e-13, 1e-12);
        if (j > 0) {
            xs.push_back(x_hi);
            increments.push_back(std::max(cur - prev, 1e-300));
        }
        prev = cur;
    }
    return fit::loglog(xs, increments).slope;
}

bool l2_membership(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("l2_membership: alpha must be > 0");
    const bool rule = 2.0 * alpha > 1.0;
    const double slope = l2_tail_exponent(alpha);
    const bool numeric = slope < -0.02;
    if (rule != numeric) {
        throw CheckFailureError(
            "l2_membership: tail-exponent rule and quadrature disagree");
    }
    return rule;
}

}  // namespace eigensum::wkb
