#include "eigensum/conditions.hpp"

#include <algorithm>
#include <cmath>

#include "eigensum/fit.hpp"
#include "eigensum/parallel.hpp"
#include "eigensum/quadrature.hpp"
#include "eigensum/rng.hpp"

namespace eigensum::cond {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sphere_measure(int d) {
    return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

double ball_volume(int d, double r) {
    return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0) * std::pow(r, d);
}

double norm_of(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

/// Mixture proposal for the outer integration variable: mass-centered
/// Gaussians plus a uniform ball that covers the largest truncation
/// radius.
struct WProposal {
    int d;
    std::vector<std::vector<double>> centers;
    double sigma;
    double rmax;
    double gauss_norm;  // (2 pi sigma^2)^{-d/2} / #centers
    double ball_density;

    WProposal(const pot::PotentialSpec& v, double rmax_)
        : d(v.dimension()), centers(v.mass_centers()),
          sigma(std::max(1.0, v.mass_scale())), rmax(rmax_) {
        gauss_norm = std::pow(2.0 * kPi * sigma * sigma, -0.5 * d) /
                     static_cast<double>(centers.size());
        ball_density = 1.0 / ball_volume(d, rmax);
    }

    void sample(rng::Stream& s, std::vector<double>& w) const {
        if (s.uniform() < 0.5) {
            const auto& c = centers[static_cast<std::size_t>(
                s.next_u64() % centers.size())];
            for (int i = 0; i < d; ++i) w[i] = c[i] + sigma * s.normal();
        } else {
            double nrm = 0.0;
            for (int i = 0; i < d; ++i) {
                w[i] = s.normal();
                nrm += w[i] * w[i];
            }
            nrm = std::sqrt(nrm);
            const double r = rmax * std::pow(s.uniform(), 1.0 / d);
            for (int i = 0; i < d; ++i) w[i] *= r / nrm;
        }
    }

    double density(const std::vector<double>& w) const {
        double g = 0.0;
        for (const auto& c : centers) {
            double q = 0.0;
            for (int i = 0; i < d; ++i) {
                const double dx = w[i] - c[i];
                q += dx * dx;
            }
            g += std::exp(-q / (2.0 * sigma * sigma));
        }
        g *= gauss_norm;
        const double b = norm_of(w) <= rmax ? ball_density : 0.0;
        return 0.5 * g + 0.5 * b;
    }
};

struct LevelStats {
    std::vector<double> mean;
    std::vector<double> se;
};

/// Batched Monte Carlo driver. Each batch owns a counter-based stream and
/// its partial sums; batches are reduced in index order, so the result is
/// independent of the worker count.
template <typename SampleFn>
LevelStats run_mc(int slot_count, std::int64_t samples, std::uint64_t seed,
                  int workers, SampleFn&& per_sample) {
    const std::int64_t batch_size = 4096;
    const std::int64_t nbatches = (samples + batch_size - 1) / batch_size;
    std::vector<std::vector<double>> sums(
        static_cast<std::size_t>(nbatches),
        std::vector<double>(static_cast<std::size_t>(slot_count), 0.0));
    std::vector<std::vector<double>> sq(sums);

    par::parallel_for(nbatches, workers, [&](std::int64_t b) {
        rng::Stream stream(seed, static_cast<std::uint64_t>(b));
        auto& bsum = sums[static_cast<std::size_t>(b)];
        auto& bsq = sq[static_cast<std::size_t>(b)];
        std::vector<double> contrib(static_cast<std::size_t>(slot_count));
        const std::int64_t lo = b * batch_size;
        const std::int64_t hi = std::min(samples, lo + batch_size);
        for (std::int64_t i = lo; i < hi; ++i) {
            std::fill(contrib.begin(), contrib.end(), 0.0);
            per_sample(stream, contrib);
            for (int s = 0; s < slot_count; ++s) {
                bsum[static_cast<std::size_t>(s)] += contrib[static_cast<std::size_t>(s)];
                bsq[static_cast<std::size_t>(s)] +=
                    contrib[static_cast<std::size_t>(s)] * contrib[static_cast<std::size_t>(s)];
            }
        }
    });

    LevelStats out;
    out.mean.assign(static_cast<std::size_t>(slot_count), 0.0);
    out.se.assign(static_cast<std::size_t>(slot_count), 0.0);
    for (std::int64_t b = 0; b < nbatches; ++b) {
        for (int s = 0; s < slot_count; ++s) {
            out.mean[static_cast<std::size_t>(s)] += sums[static_cast<std::size_t>(b)][static_cast<std::size_t>(s)];
            out.se[static_cast<std::size_t>(s)] += sq[static_cast<std::size_t>(b)][static_cast<std::size_t>(s)];
        }
    }
    const double n = static_cast<double>(samples);
    for (int s = 0; s < slot_count; ++s) {
        const double m = out.mean[static_cast<std::size_t>(s)] / n;
        const double var =
            std::max(0.0, out.se[static_cast<std::size_t>(s)] / n - m * m);
        out.mean[static_cast<std::size_t>(s)] = m;
        out.se[static_cast<std::size_t>(s)] = std::sqrt(var / n);
    }
    return out;
}

/// Verdict from a refinement sequence: Cauchy tail -> convergent,
/// positive power-law growth against the refinement variable -> divergent.
void classify(ConditionReport& report, const std::vector<double>& x_primary,
              const std::vector<double>& x_secondary) {
    const auto& lv = report.estimates;
    const std::size_t n = lv.size();
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = lv[i].value;
    report.extrapolated = n ? values[n - 1] : 0.0;

    if (n >= 4) {
        bool cauchy = true;
        for (std::size_t i = n - 3; i < n; ++i) {
            const double diff = std::abs(values[i] - values[i - 1]);
            if (diff >= 1e-3 * std::max(std::abs(values[i - 1]), 1e-12)) {
                cauchy = false;
            }
        }
        if (cauchy) {
            report.verdict = Verdict::convergent;
            return;
        }
    }
    if (n >= 4) {
        auto f1 = fit::loglog(x_primary, values);
        fit::LinearFit best = f1;
        if (!x_secondary.empty()) {
            auto f2 = fit::loglog(x_secondary, values);
            if (f2.r2 > best.r2) best = f2;
        }
        report.growth_exponent = best.slope;
        report.growth_r2 = best.r2;
        if (best.slope > 0.05 && best.r2 >= 0.99) {
            report.verdict = Verdict::divergent;
            return;
        }
    }
    report.verdict = Verdict::inconclusive;
}

}  // namespace

std::string to_string(ConditionId id) {
    switch (id) {
        case ConditionId::kato: return "kato";
        case ConditionId::cond0: return "cond0";
        case ConditionId::cond2: return "cond2";
        case ConditionId::cond1: return "cond1";
        case ConditionId::u2: return "u2";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::convergent: return "convergent";
        case Verdict::divergent: return "divergent";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(LpRule r) {
    switch (r) {
        case LpRule::corollary1_range: return "corollary1_range";
        case LpRule::corollary2_L1_kato: return "corollary2_L1_kato";
        case LpRule::hls_endpoint: return "hls_endpoint";
        case LpRule::lieb_thirring_range: return "lieb_thirring_range";
        case LpRule::none: return "none";
    }
    return "?";
}

double kato_norm(const pot::PotentialSpec& v, double alpha, int sample_count,
                 std::uint64_t seed) {
    const int d = v.dimension();
    if (d < 3) {
        throw std::domain_error("kato_norm: the singular-integral form needs d >= 3");
    }
    if (sample_count < 32) {
        throw std::domain_error("kato_norm: sample_count must be >= 32");
    }
    if (!(alpha > 0.0)) throw std::domain_error("kato_norm: alpha must be > 0");

    const auto raw = v.with_cutoff(0.0);
    std::vector<std::vector<double>> probes = raw.mass_centers();
    probes.emplace_back(d, 0.0);
    rng::Stream stream(seed, 0x6b61746fULL);
    const double spread = 2.0 * raw.mass_scale();
    const std::size_t base = probes.size();
    while (probes.size() < base + static_cast<std::size_t>(sample_count)) {
        auto x = probes[stream.next_u64() % base];
        for (int i = 0; i < d; ++i) x[i] += spread * stream.normal();
        probes.push_back(std::move(x));
    }

    const double omega = sphere_measure(d);
    const int shells = 48;
    const int dirs = 96;
    double sup = 0.0;
    std::vector<double> y(d);
    for (std::size_t p = 0; p < probes.size(); ++p) {
        rng::Stream dir_stream(seed, 0x73686c6cULL + p);
        double integral = 0.0;
        for (int j = 0; j < shells; ++j) {
            const double r0 = alpha * std::pow(static_cast<double>(j) / shells, 2.5);
            const double r1 =
                alpha * std::pow(static_cast<double>(j + 1) / shells, 2.5);
            const double rm = 0.5 * (r0 + r1);
            if (rm == 0.0) continue;
            double avg = 0.0;
            for (int k = 0; k < dirs; ++k) {
                double nrm = 0.0;
                for (int i = 0; i < d; ++i) {
                    y[i] = dir_stream.normal();
                    nrm += y[i] * y[i];
                }
                nrm = std::sqrt(nrm);
                for (int i = 0; i < d; ++i) {
                    y[i] = probes[p][i] + rm * y[i] / nrm;
                }
                avg += std::abs(raw.value(y));
            }
            avg /= dirs;
            integral += rm * avg * (r1 - r0);
        }
        sup = std::max(sup, omega * integral);
    }
    return sup;
}

ConditionReport kato_report(const pot::PotentialSpec& v,
                            const std::vector<double>& alphas,
                            int sample_count, std::uint64_t seed) {
    ConditionReport report;
    report.condition_id = ConditionId::kato;
    report.d = v.dimension();
    report.seed = seed;
    std::vector<double> inv_alpha;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        RefinementLevel lv;
        lv.level = static_cast<int>(k);
        lv.cutoff = alphas[k];
        lv.value = kato_norm(v, alphas[k], sample_count, seed);
        report.estimates.push_back(lv);
        inv_alpha.push_back(1.0 / alphas[k]);
    }
    // Kato means the values vanish with alpha: fit value ~ alpha^s
    std::vector<double> values, as;
    for (const auto& lv : report.estimates) {
        values.push_back(lv.value);
        as.push_back(lv.cutoff);
    }
    const auto f = fit::loglog(as, values);
    report.growth_exponent = f.slope;
    report.growth_r2 = f.r2;
    const bool all_zero =
        *std::max_element(values.begin(), values.end()) <= 1e-14;
    if (all_zero || (f.slope > 0.1 && f.r2 >= 0.95)) {
        report.verdict = Verdict::convergent;  // kato_norm -> 0 with alpha
    } else if (f.slope < -0.05 && f.r2 >= 0.95) {
        report.verdict = Verdict::divergent;
    } else {
        report.verdict = Verdict::inconclusive;
    }
    report.extrapolated = values.empty() ? 0.0 : values.back();
    return report;
}

ConditionReport condition_integral(const pot::PotentialSpec& v, ConditionId id,
                                   double c_param,
                                   const RefinementSchedule& schedule,
                                   std::uint64_t seed, int workers) {
    const int d = v.dimension();
    if (id == ConditionId::cond2 && d != 4) {
        throw ConfigError("condition", "cond2 requires d = 4");
    }
    if (id == ConditionId::cond1 && d < 5) {
        throw ConfigError("condition", "cond1 requires d >= 5");
    }
    if (id == ConditionId::cond0 && !(c_param > 0.0)) {
        throw ConfigError("condition.c", "cond0 requires c > 0");
    }
    if (id == ConditionId::kato || id == ConditionId::u2) {
        throw ConfigError("condition", "use kato_report / u2_split for this id");
    }

    const int levels = schedule.levels;
    std::vector<double> radius(static_cast<std::size_t>(levels));
    std::vector<double> cutoff(static_cast<std::size_t>(levels));
    for (int k = 0; k < levels; ++k) {
        radius[static_cast<std::size_t>(k)] = schedule.r0 * std::pow(schedule.r_growth, k);
        cutoff[static_cast<std::size_t>(k)] =
            id == ConditionId::cond0 ? 0.0
                                     : schedule.eps0 * std::pow(schedule.eps_decay, k);
    }

    const auto raw = v.with_cutoff(0.0);
    const WProposal proposal(raw, radius.back());
    const double omega = sphere_measure(d);

    // constant importance weight of the kernel factor
    double kernel_weight = 0.0;
    if (id == ConditionId::cond0) kernel_weight = std::pow(kPi / c_param, 0.5 * d);
    if (id == ConditionId::cond1) kernel_weight = omega / 4.0;
    if (id == ConditionId::cond2) kernel_weight = omega / 16.0;

    auto per_sample = [&](rng::Stream& s, std::vector<double>& contrib) {
        std::vector<double> w(static_cast<std::size_t>(d));
        std::vector<double> wp(static_cast<std::size_t>(d));
        proposal.sample(s, w);
        const double pw = proposal.density(w);
        if (pw <= 0.0) return;

        double delta_norm = 0.0;
        if (id == ConditionId::cond0) {
            const double sd = std::sqrt(0.5 / c_param);
            double nrm = 0.0;
            for (int i = 0; i < d; ++i) {
                const double dv = sd * s.normal();
                wp[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] + dv;
                nrm += dv * dv;
            }
            delta_norm = std::sqrt(nrm);
        } else {
            const double r = id == ConditionId::cond1
                                 ? std::pow(s.uniform(), 0.25)
                                 : std::pow(s.uniform() * s.uniform(), 0.25);
            double nrm = 0.0;
            for (int i = 0; i < d; ++i) {
                wp[static_cast<std::size_t>(i)] = s.normal();
                nrm += wp[static_cast<std::size_t>(i)] * wp[static_cast<std::size_t>(i)];
            }
            nrm = std::sqrt(nrm);
            for (int i = 0; i < d; ++i) {
                wp[static_cast<std::size_t>(i)] =
                    w[static_cast<std::size_t>(i)] + r * wp[static_cast<std::size_t>(i)] / nrm;
            }
            delta_norm = r;
        }

        const double vw = -raw.minus(w);
        if (vw == 0.0) return;
        const double vwp = -raw.minus(wp);
        if (vwp == 0.0) return;
        const double base = kernel_weight * vw * vwp / pw;
        const double nw = norm_of(w);
        const double nwp = norm_of(wp);
        for (int k = 0; k < levels; ++k) {
            if (nw <= radius[static_cast<std::size_t>(k)] &&
                nwp <= radius[static_cast<std::size_t>(k)] &&
                delta_norm >= cutoff[static_cast<std::size_t>(k)]) {
                contrib[static_cast<std::size_t>(k)] = base;
            }
        }
    };

    const auto stats = run_mc(levels, schedule.samples, seed, workers, per_sample);

    ConditionReport report;
    report.condition_id = id;
    report.d = d;
    report.c = c_param;
    report.seed = seed;
    for (int k = 0; k < levels; ++k) {
        report.estimates.push_back({k, radius[static_cast<std::size_t>(k)],
                                    cutoff[static_cast<std::size_t>(k)],
                                    stats.mean[static_cast<std::size_t>(k)],
                                    stats.se[static_cast<std::size_t>(k)]});
    }
    std::vector<double> inv_eps;
    if (id != ConditionId::cond0) {
        for (double e : cutoff) inv_eps.push_back(1.0 / e);
    }
    classify(report, radius, inv_eps);
    return report;
}

double exp_tail_integral(double power, double from, double rate) {
    if (from < 0.0) throw std::domain_error("exp_tail_integral: from must be >= 0");
    if (from == 0.0 && power <= -1.0) {
        throw std::domain_error("exp_tail_integral: divergent at 0");
    }
    const double hi = from + 200.0 / rate;
    return quad::adaptive(
        [power, rate](double x) { return std::pow(x, power) * std::exp(-rate * x); },
        from, hi, 1e-14, 1e-12);
}

double find_alpha0() {
    // defect(alpha) = int_alpha^inf v^{-1} e^{-v/2} dv - 2 log(1/alpha),
    // strictly increasing; the crossing is the admissible threshold.
    auto defect = [](double alpha) {
        return exp_tail_integral(-1.0, alpha, 0.5) - 2.0 * std::log(1.0 / alpha);
    };
    double lo = 1e-12, hi = 1.0 - 1e-12;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (defect(mid) <= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

KernelBoundCheck u2_kernel_bound_check(int d, double t, int pair_count,
                                       std::uint64_t seed) {
    if (d < 4) throw std::domain_error("u2_kernel_bound_check: d >= 4");
    KernelBoundCheck out;
    out.samples = pair_count;
    const double alpha0 = d == 4 ? find_alpha0() : 0.0;
    const double c_tail =
        d >= 5 ? std::pow(4.0, 0.5 * d - 2.0) *
                     exp_tail_integral(0.5 * d - 3.0, 0.0, 0.5)
               : 0.0;
    rng::Stream s(seed, 0x6b626e64ULL);
    const double rlo = 1e-3 * std::sqrt(t), rhi = 8.0 * std::sqrt(t);
    for (int i = 0; i < pair_count; ++i) {
        const double r = rlo * std::pow(rhi / rlo, s.uniform());
        const double a = 0.25 * r * r;
        const double lhs =
            std::pow(a, 2.0 - 0.5 * d) *
            exp_tail_integral(0.5 * d - 3.0, a / t, 1.0);
        double rhs;
        if (d >= 5) {
            rhs = c_tail * std::exp(-a / (2.0 * t)) / std::pow(r, d - 4);
        } else if (a <= alpha0 * t) {
            rhs = 2.0 * std::exp(-a / (2.0 * t)) * std::log(t / a);
        } else {
            rhs = 2.0 * std::exp(-a / (2.0 * t)) * std::log(1.0 / alpha0);
        }
        const double ratio = lhs / rhs;
        out.worst_ratio = std::max(out.worst_ratio, ratio);
        if (ratio > 1.0 + 1e-9) out.ok = false;
    }
    return out;
}

U2Report u2_split(const pot::PotentialSpec& v, double t, int d,
                  const RefinementSchedule& schedule, std::uint64_t seed,
                  int workers) {
    if (d < 4) throw ConfigError("u2.d", "u2 split requires d >= 4");
    if (v.dimension() != d) throw ConfigError("u2.d", "potential dimension mismatch");
    if (!(t > 0.0)) throw ConfigError("u2.t", "t must be > 0");

    const int levels = schedule.levels;
    std::vector<double> radius(static_cast<std::size_t>(levels));
    for (int k = 0; k < levels; ++k) {
        radius[static_cast<std::size_t>(k)] = schedule.r0 * std::pow(schedule.r_growth, k);
    }
    const auto raw = v.with_cutoff(0.0);
    const WProposal proposal(raw, radius.back());

    // graded time mesh; the heat kernel in the pair difference is sampled
    // exactly, so each time node costs one Gaussian draw
    const int jnodes = 16;
    std::vector<double> u_mid(jnodes), u_width(jnodes);
    for (int j = 0; j < jnodes; ++j) {
        const double e0 = t * std::pow(static_cast<double>(j) / jnodes, 3.0);
        const double e1 = t * std::pow(static_cast<double>(j + 1) / jnodes, 3.0);
        u_mid[static_cast<std::size_t>(j)] = 0.5 * (e0 + e1);
        u_width[static_cast<std::size_t>(j)] = e1 - e0;
    }

    // slots: [0, levels) combined I1+I2 per level, then I1 and I2 at the
    // finest truncation
    const int slots = levels + 2;
    auto per_sample = [&](rng::Stream& s, std::vector<double>& contrib) {
        std::vector<double> w(static_cast<std::size_t>(d));
        std::vector<double> wp(static_cast<std::size_t>(d));
        proposal.sample(s, w);
        const double pw = proposal.density(w);
        if (pw <= 0.0) return;
        const double vw = -raw.minus(w);
        if (vw == 0.0) return;
        const double nw = norm_of(w);

        for (int part = 0; part < 2; ++part) {
            for (int j = 0; j < jnodes; ++j) {
                const double u = u_mid[static_cast<std::size_t>(j)];
                const double tau = part == 0 ? u : 2.0 * t - u;
                const double sd = std::sqrt(2.0 * tau);
                for (int i = 0; i < d; ++i) {
                    wp[static_cast<std::size_t>(i)] =
                        w[static_cast<std::size_t>(i)] + sd * s.normal();
                }
                const double vwp = -raw.minus(wp);
                if (vwp == 0.0) continue;
                const double term =
                    u_width[static_cast<std::size_t>(j)] * u * vw * vwp / pw;
                const double nwp = norm_of(wp);
                for (int k = 0; k < levels; ++k) {
                    if (nw <= radius[static_cast<std::size_t>(k)] &&
                        nwp <= radius[static_cast<std::size_t>(k)]) {
                        contrib[static_cast<std::size_t>(k)] += term;
                    }
                }
                if (nw <= radius.back() && nwp <= radius.back()) {
                    contrib[static_cast<std::size_t>(levels + part)] += term;
                }
            }
        }
    };

    const auto stats = run_mc(slots, schedule.samples, seed, workers, per_sample);

    U2Report out;
    out.combined.condition_id = ConditionId::u2;
    out.combined.d = d;
    out.combined.t = t;
    out.combined.seed = seed;
    for (int k = 0; k < levels; ++k) {
        out.combined.estimates.push_back({k, radius[static_cast<std::size_t>(k)], 0.0,
                                          stats.mean[static_cast<std::size_t>(k)],
                                          stats.se[static_cast<std::size_t>(k)]});
    }
    classify(out.combined, radius, {});
    out.i1 = stats.mean[static_cast<std::size_t>(levels)];
    out.i2 = stats.mean[static_cast<std::size_t>(levels + 1)];
    out.alpha0 = find_alpha0();
    out.kernel_bound = u2_kernel_bound_check(d, t, 10000, seed);
    return out;
}

LpClassification lp_classify(int d, double p, bool v_is_kato, bool v_in_l1) {
    if (d < 1) throw ConfigError("lp.d", "d must be >= 1");
    if (!(p >= 1.0)) throw ConfigError("lp.p", "p must be >= 1");
    const double eps = 1e-9;
    LpClassification out;
    out.d = d;
    out.p = p;

    const double p_low = 2.0 * d / (d + 4.0);
    const bool cor1 = d >= 4 && p >= p_low - eps && p <= 2.0 + eps;
    const bool cor2 = d >= 4 && (v_in_l1 || std::abs(p - 1.0) <= eps);
    const bool hls = d >= 5 && std::abs(p - p_low) <= eps;
    bool lt = false;
    if (d == 1) lt = p >= 1.0 - eps && p <= 1.5 + eps;
    if (d == 2) lt = p > 1.0 + eps && p <= 2.0 + eps;
    if (d >= 3) lt = p >= 0.5 * d - eps && p <= 0.5 * d + 1.0 + eps;

    if (cor1) out.rules_fired.push_back(LpRule::corollary1_range);
    if (cor2) out.rules_fired.push_back(LpRule::corollary2_L1_kato);
    if (hls) out.rules_fired.push_back(LpRule::hls_endpoint);
    if (lt) out.rules_fired.push_back(LpRule::lieb_thirring_range);
    if (out.rules_fired.empty()) out.rules_fired.push_back(LpRule::none);

    out.admissible = lt || (v_is_kato && (cor1 || cor2 || hls));

    if (d == 1 && p >= 2.0 - eps) {
        out.note =
            "d=1 with V- in L^2 does not imply a finite eigenvalue sum: "
            "slowly decaying wells (see wkb-sweep, alpha in (1/2, 2/3)) "
            "have divergent sums";
    } else if ((d == 2 || d == 3) && !lt) {
        out.note =
            "outside the moment-inequality range nothing is known for d=2,3";
    }
    return out;
}

LtResult lt_quantity(const pot::PotentialSpec& v, int d, double gamma,
                     const RefinementSchedule& schedule, std::uint64_t seed,
                     int workers) {
    if (v.dimension() != d) throw ConfigError("lt.d", "potential dimension mismatch");
    if (!(gamma >= 0.0)) throw ConfigError("lt.gamma", "gamma must be >= 0");
    const double power = 0.5 * d + gamma;

    const int levels = schedule.levels;
    std::vector<double> radius(static_cast<std::size_t>(levels));
    for (int k = 0; k < levels; ++k) {
        radius[static_cast<std::size_t>(k)] = schedule.r0 * std::pow(schedule.r_growth, k);
    }
    const auto raw = v.with_cutoff(0.0);
    const WProposal proposal(raw, radius.back());

    auto per_sample = [&](rng::Stream& s, std::vector<double>& contrib) {
        std::vector<double> w(static_cast<std::size_t>(d));
        proposal.sample(s, w);
        const double pw = proposal.density(w);
        if (pw <= 0.0) return;
        const double vw = -raw.minus(w);
        if (vw == 0.0) return;
        const double base = std::pow(vw, power) / pw;
        const double nw = norm_of(w);
        for (int k = 0; k < levels; ++k) {
            if (nw <= radius[static_cast<std::size_t>(k)]) {
                contrib[static_cast<std::size_t>(k)] = base;
            }
        }
    };

    const auto stats = run_mc(levels, schedule.samples, seed, workers, per_sample);

    LtResult out;
    ConditionReport scratch;
    for (int k = 0; k < levels; ++k) {
        RefinementLevel lv{k, radius[static_cast<std::size_t>(k)], 0.0,
                           stats.mean[static_cast<std::size_t>(k)],
                           stats.se[static_cast<std::size_t>(k)]};
        out.estimates.push_back(lv);
        scratch.estimates.push_back(lv);
    }
    classify(scratch, radius, {});
    out.verdict = scratch.verdict;
    out.value = scratch.extrapolated;
    out.growth_exponent = scratch.growth_exponent;
    out.growth_r2 = scratch.growth_r2;
    return out;
}

}  // namespace eigensum::cond
