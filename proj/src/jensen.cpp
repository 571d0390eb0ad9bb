#include "eigensum/jensen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eigensum/grid.hpp"
#include "eigensum/parallel.hpp"

namespace eigensum::jensen {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_to_pi(double x) { return std::remainder(x, 2.0 * kPi); }

}  // namespace

Engine::Engine(const linalg::SymMatrix& a,
               const semigroup::SemigroupDifference& dt, double t)
    : t_(t) {
    if (!(t > 0.0)) throw std::domain_error("jensen engine: t must be > 0");
    if (dt.t != t) throw std::invalid_argument("jensen engine: t mismatch with D_t");
    if (dt.kernel.rows() != a.n()) {
        throw std::invalid_argument("jensen engine: size mismatch");
    }
    const auto ad = linalg::eigh(a);
    mu_ = ad.values;
    q_ = ad.vectors;
    const double scale = 1.0 + std::abs(mu_(mu_.size() - 1));
    if (mu_(0) < -1e-8 * scale) {
        throw std::invalid_argument(
            "jensen engine: A must have nonnegative spectrum");
    }
    // Everything downstream works in the eigenbasis of A:
    // F(z) is orthogonally similar to z diag(c(z)) M with M = Q^T D Q,
    // which preserves determinants, traces and HS norms.
    w_ = q_.transpose() * dt.op() * q_;
    w_row_sq_ = w_.rowwise().squaredNorm();
    exp_mu_ = (-t * mu_.array()).exp().matrix();
    q_row0_sq_ = q_.row(0).array().square().matrix().transpose();
}

ComplexMatrix Engine::f_of_z(Complex z) const {
    if (std::abs(z) >= 1.0) {
        throw std::domain_error("f_of_z: |z| must be < 1");
    }
    const int nn = n();
    ComplexMatrix ft(nn, nn);
    for (int i = 0; i < nn; ++i) {
        const Complex ci = z / (1.0 - z * exp_mu_(i));
        ft.row(i) = ci * w_.row(i).cast<Complex>();
    }
    return q_.cast<Complex>() * ft * q_.transpose().cast<Complex>();
}

double Engine::f_hs_norm(Complex z) const {
    if (std::abs(z) >= 1.0) {
        throw std::domain_error("f_hs_norm: |z| must be < 1");
    }
    double sum = 0.0;
    for (int i = 0; i < n(); ++i) {
        const double ci = std::norm(z / (1.0 - z * exp_mu_(i)));
        sum += ci * w_row_sq_(i);
    }
    return std::sqrt(sum);
}

double Engine::resolvent_norm(Complex z) const {
    double min_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n(); ++i) {
        min_dist = std::min(min_dist, std::abs(1.0 - z * exp_mu_(i)));
    }
    return 1.0 / min_dist;
}

Engine::LogHSample Engine::log_h_sample(Complex z) const {
    if (std::abs(z) >= 1.0) {
        throw std::domain_error("log_h: |z| must be < 1");
    }
    const int nn = n();
    ComplexMatrix ft(nn, nn);
    for (int i = 0; i < nn; ++i) {
        const Complex ci = z / (1.0 - z * exp_mu_(i));
        ft.row(i) = ci * w_.row(i).cast<Complex>();
    }
    const auto det2 = linalg::det2_log(ft);
    return {det2.log_abs, det2.arg_det, det2.singular};
}

double Engine::log_h(Complex z) const { return log_h_sample(z).log_abs; }

Engine::LogHSample Engine::regularized_sample(Complex z) const {
    // log|det(I - z e^{-tB})| = log|det(I - F)| + sum_k log|1 - z e^{-t mu_k}|.
    // Each factor on the right has no zero inside the disk and its circle
    // average vanishes, so averaging this quantity gives exactly the same
    // circle average as log|h| while removing the near-boundary spikes
    // caused by small eigenvalues of A.
    if (std::abs(z) >= 1.0) {
        throw std::domain_error("log_h: |z| must be < 1");
    }
    const int nn = n();
    ComplexMatrix ft(nn, nn);
    for (int i = 0; i < nn; ++i) {
        const Complex ci = z / (1.0 - z * exp_mu_(i));
        ft.row(i) = ci * w_.row(i).cast<Complex>();
    }
    const auto det2 = linalg::det2_log(ft);
    if (det2.singular) return {det2.log_abs, det2.arg_det, true};
    double value = det2.log_abs - det2.trace.real();
    for (int i = 0; i < nn; ++i) {
        value += std::log(std::abs(1.0 - z * exp_mu_(i)));
    }
    return {value, det2.arg_det, false};
}

namespace {

struct CircleSamples {
    std::vector<double> log_abs;
    std::vector<double> arg;
    bool any_singular = false;
};

// Evaluates the missing slots of a half-circle sample set. `log_abs` and
// `arg` have theta_count/2 + 1 slots; slots holding NaN are computed.
void fill_slots(const Engine& engine, double r, int theta_count,
                CircleSamples& s, int workers, bool serial,
                bool regularized = false) {
    const int half = theta_count / 2;
    std::vector<int> todo;
    for (int j = 0; j <= half; ++j) {
        if (std::isnan(s.log_abs[static_cast<std::size_t>(j)])) todo.push_back(j);
    }
    auto work = [&](std::int64_t idx) {
        const int j = todo[static_cast<std::size_t>(idx)];
        const double theta = 2.0 * kPi * j / theta_count;
        const Complex z(r * std::cos(theta), r * std::sin(theta));
        const auto sample =
            regularized ? engine.regularized_sample(z) : engine.log_h_sample(z);
        s.log_abs[static_cast<std::size_t>(j)] = sample.log_abs;
        s.arg[static_cast<std::size_t>(j)] = sample.arg_det;
    };
    if (serial) {
        par::serial_for(static_cast<std::int64_t>(todo.size()), work);
    } else {
        par::parallel_for(static_cast<std::int64_t>(todo.size()), workers, work);
    }
    for (int j = 0; j <= half; ++j) {
        if (std::isinf(s.log_abs[static_cast<std::size_t>(j)])) {
            s.any_singular = true;
        }
    }
}

double trapezoid_average(const std::vector<double>& half_samples,
                         int theta_count) {
    // Uniform periodic trapezoid over the full circle; the lower
    // semicircle mirrors the upper one for real data.
    const int half = theta_count / 2;
    double sum = half_samples[0] + half_samples[static_cast<std::size_t>(half)];
    for (int j = 1; j < half; ++j) sum += 2.0 * half_samples[static_cast<std::size_t>(j)];
    return sum / theta_count;
}

int winding_count(const std::vector<double>& args) {
    // Unwrapped phase change of det(I - F) over the upper semicircle; the
    // lower semicircle contributes the same amount by conjugation, so the
    // full winding is (phase(pi) - phase(0)) / pi.
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < args.size(); ++j) {
        total += wrap_to_pi(args[j + 1] - args[j]);
    }
    return static_cast<int>(std::lround(total / kPi));
}

JensenEvaluation evaluate_circle(const Engine& engine, double r,
                                 int theta_count, int workers, bool serial) {
    if (theta_count < 16 || (theta_count & (theta_count - 1)) != 0) {
        throw std::domain_error(
            "jensen_circle: theta_count must be a power of two >= 16");
    }
    if (!(r >= 0.0) || r >= 1.0) {
        throw std::domain_error("jensen_circle: r must lie in [0, 1)");
    }
    JensenEvaluation ev;
    ev.t = engine.t();
    ev.r = r;
    ev.theta_count = theta_count;

    double r_try = r;
    for (int attempt = 0; attempt <= 3; ++attempt) {
        CircleSamples s;
        const int half = theta_count / 2;
        s.log_abs.assign(static_cast<std::size_t>(half) + 1,
                         std::numeric_limits<double>::quiet_NaN());
        s.arg.assign(static_cast<std::size_t>(half) + 1, 0.0);
        fill_slots(engine, r_try, theta_count, s, workers, serial);
        if (s.any_singular) {
            ev.zero_hits += 1;
            r_try = r * (1.0 - (attempt + 1) * 1e-6);
            continue;
        }
        ev.samples = s.log_abs;
        ev.circle_average = trapezoid_average(s.log_abs, theta_count);
        ev.winding = winding_count(s.arg);
        ev.r_used = r_try;
        return ev;
    }
    throw NonConvergenceError(
        "jensen_circle: repeated zero hits after 3 radius perturbations",
        "r = " + std::to_string(r));
}

}  // namespace

JensenEvaluation jensen_circle(const Engine& engine, double r, int theta_count,
                               int workers) {
    return evaluate_circle(engine, r, theta_count, workers, false);
}

JensenEvaluation jensen_circle_serial(const Engine& engine, double r,
                                      int theta_count) {
    return evaluate_circle(engine, r, theta_count, 1, true);
}

JensenEvaluation jensen_circle_adaptive(const Engine& engine, double r,
                                        int theta_start, int theta_max,
                                        int workers, bool regularized) {
    if (theta_start < 16 || (theta_start & (theta_start - 1)) != 0) {
        throw std::domain_error(
            "jensen_circle_adaptive: theta_start must be a power of two >= 16");
    }
    double r_try = r;
    int zero_hits = 0;
    for (int attempt = 0; attempt <= 3; ++attempt) {
        int m = theta_start;
        CircleSamples s;
        s.log_abs.assign(static_cast<std::size_t>(m / 2) + 1,
                         std::numeric_limits<double>::quiet_NaN());
        s.arg.assign(static_cast<std::size_t>(m / 2) + 1, 0.0);
        fill_slots(engine, r_try, m, s, workers, false, regularized);

        double prev_avg = std::numeric_limits<double>::quiet_NaN();
        int prev_winding = -1;
        bool hit = s.any_singular;
        while (!hit) {
            const double avg = trapezoid_average(s.log_abs, m);
            const int winding = winding_count(s.arg);
            const bool stable =
                !std::isnan(prev_avg) &&
                std::abs(avg - prev_avg) <= 1e-10 * std::max(1.0, std::abs(avg)) &&
                winding == prev_winding;
            if (stable || 2 * m > theta_max) {
                JensenEvaluation ev;
                ev.t = engine.t();
                ev.r = r;
                ev.r_used = r_try;
                ev.theta_count = m;
                ev.samples = s.log_abs;
                ev.circle_average = avg;
                ev.winding = winding;
                ev.zero_hits = zero_hits;
                ev.converged = stable;
                return ev;
            }
            prev_avg = avg;
            prev_winding = winding;
            // refine: old slot j becomes slot 2j of the doubled grid
            m *= 2;
            CircleSamples fine;
            fine.log_abs.assign(static_cast<std::size_t>(m / 2) + 1,
                                std::numeric_limits<double>::quiet_NaN());
            fine.arg.assign(static_cast<std::size_t>(m / 2) + 1, 0.0);
            for (std::size_t j = 0; j < s.log_abs.size(); ++j) {
                fine.log_abs[2 * j] = s.log_abs[j];
                fine.arg[2 * j] = s.arg[j];
            }
            fill_slots(engine, r_try, m, fine, workers, false, regularized);
            hit = fine.any_singular;
            s = std::move(fine);
        }
        zero_hits += 1;
        r_try = r * (1.0 - (attempt + 1) * 1e-6);
    }
    throw NonConvergenceError(
        "jensen_circle_adaptive: repeated zero hits after 3 radius "
        "perturbations",
        "r = " + std::to_string(r));
}

double default_time_step(const linalg::SymMatrix& a) {
    const auto d = linalg::eigh(a);
    const double lam_max = d.values(d.values.size() - 1);
    if (lam_max <= 0.0) return 1.0;
    return 20.0 / lam_max;
}

EigensumResult eigensum_jensen(const linalg::SymMatrix& a,
                               const linalg::SymMatrix& b, double t,
                               const RadiusSchedule& schedule, int workers) {
    const auto dt = semigroup::semigroup_difference(a, b, t);
    Engine engine(a, dt, t);
    EigensumResult out;
    out.t = t;
    out.direct_sum = grid::direct_negative_sum(b);

    // Not-yet-enclosed zeros sit in (r, 1); there are at most n - N of
    // them and each contributes below (-log r)/t, so the walk is complete
    // once (n - N) * (-log r) / t drops under the stabilization tolerance.
    const auto tol_abs = [&](double s) {
        return schedule.stabilize_tol * std::max(1.0, std::abs(s));
    };
    const auto k_certified = [&](double s, int winding) {
        const int hidden = engine.n() - winding;
        if (hidden <= 0) return schedule.k_min;
        const double need = std::log2(1.5 * hidden / (t * tol_abs(s)));
        return std::clamp(static_cast<int>(std::ceil(need)), schedule.k_min,
                          schedule.k_max);
    };

    std::ostringstream trace;
    double prev_estimate = std::numeric_limits<double>::quiet_NaN();
    int prev_winding = -1;
    int k = schedule.k_min;
    while (k <= schedule.k_max) {
        const double r = 1.0 - std::pow(2.0, -k);
        const auto ev =
            jensen_circle_adaptive(engine, r, schedule.theta_start,
                                   schedule.theta_max, workers, true);
        const double estimate =
            (ev.circle_average - ev.winding * std::log(ev.r_used)) / t;
        out.radii_used.push_back(ev.r_used);
        trace << "k=" << k << " r=" << ev.r_used << " N=" << ev.winding
              << " estimate=" << estimate
              << (ev.converged ? "" : " (circle not converged)") << "\n";
        const bool agrees =
            !std::isnan(prev_estimate) && ev.winding == prev_winding &&
            std::abs(estimate - prev_estimate) <= tol_abs(estimate);
        if (agrees && ev.converged) {
            const int k_star = k_certified(estimate, ev.winding);
            if (k >= k_star) {
                out.jensen_sum = std::max(estimate, 0.0);
                out.zero_count = ev.winding;
                out.correction_applied =
                    ev.winding > 0 ? Correction::zero_count : Correction::none;
                out.relative_gap = std::abs(out.jensen_sum - out.direct_sum) /
                                   std::max(out.direct_sum, 1e-15);
                return out;
            }
            // jump to the certified radius and verify there
            prev_estimate = estimate;
            prev_winding = ev.winding;
            k = std::max(k_star, k + 1);
            continue;
        }
        prev_estimate = estimate;
        prev_winding = ev.winding;
        k += 1;
    }
    throw NonConvergenceError(
        "eigensum_jensen: radius schedule exhausted without stabilization",
        trace.str());
}

ZeroCorrespondenceReport zero_correspondence_check(const linalg::SymMatrix& a,
                                                   const linalg::SymMatrix& b,
                                                   double t, int workers) {
    const auto dt = semigroup::semigroup_difference(a, b, t);
    Engine engine(a, dt, t);
    const auto bd = linalg::eigh(b);

    std::vector<double> negatives;
    for (int i = 0; i < bd.values.size(); ++i) {
        if (bd.values(i) < -1e-12) negatives.push_back(bd.values(i));
    }
    std::sort(negatives.begin(), negatives.end());

    ZeroCorrespondenceReport report;
    report.negative_count = static_cast<int>(negatives.size());

    // cluster eigenvalues closer than 1e-9; they are indistinguishable as
    // zeros of h at double precision
    std::size_t i = 0;
    while (i < negatives.size()) {
        std::size_t j = i + 1;
        double sum = negatives[i];
        while (j < negatives.size() && negatives[j] - negatives[j - 1] <= 1e-9) {
            sum += negatives[j];
            ++j;
        }
        ZeroCluster cluster;
        cluster.multiplicity = static_cast<int>(j - i);
        cluster.eigenvalue = sum / cluster.multiplicity;
        const double z0 = std::exp(t * cluster.eigenvalue);
        const double lh = engine.log_h(Complex(z0, 0.0));
        cluster.h_at_zero = std::isinf(lh) ? 0.0 : std::exp(lh);
        const double delta = std::min(1e-6, 0.5 * (1.0 - z0));
        const double hp = std::exp(engine.log_h(Complex(z0 + delta, 0.0)));
        const double hm = std::exp(engine.log_h(Complex(z0 - delta, 0.0)));
        cluster.lipschitz = std::abs(hp - hm) / (2.0 * delta);
        cluster.small_enough =
            cluster.h_at_zero <= 1e-7 * (1.0 + cluster.lipschitz);
        report.clusters.push_back(cluster);
        i = j;
    }

    report.all_values_small = true;
    for (const auto& c : report.clusters) {
        report.all_values_small = report.all_values_small && c.small_enough;
    }

    if (negatives.empty()) {
        report.enclosing_radius = 0.5;
    } else {
        const double top_zero = std::exp(t * negatives.back());
        report.enclosing_radius = 0.5 * (1.0 + top_zero);
    }
    const auto ev = jensen_circle_adaptive(engine, report.enclosing_radius, 64,
                                           1 << 16, workers);
    report.winding_count = ev.winding;
    report.counts_match = report.winding_count == report.negative_count;
    return report;
}

}  // namespace eigensum::jensen
