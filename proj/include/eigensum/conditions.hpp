#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eigensum/potential.hpp"

namespace eigensum::cond {

enum class ConditionId { kato, cond0, cond2, cond1, u2 };
enum class Verdict { convergent, divergent, inconclusive };

std::string to_string(ConditionId id);
std::string to_string(Verdict v);

struct RefinementLevel {
    int level = 0;
    double radius = 0.0;   // truncation radius R_k
    double cutoff = 0.0;   // singular cutoff eps_k (0 when unused)
    double value = 0.0;
    double std_error = 0.0;
};

/// Verdicts are evidence, not proofs: convergent needs a Cauchy tail of
/// the refinement sequence, divergent needs a positive fitted growth
/// exponent with R^2 >= 0.99; anything else is inconclusive.
struct ConditionReport {
    ConditionId condition_id = ConditionId::cond0;
    Verdict verdict = Verdict::inconclusive;
    std::vector<RefinementLevel> estimates;
    double extrapolated = 0.0;       // limit estimate (last value)
    double growth_exponent = 0.0;    // fitted slope of the refinement
    double growth_r2 = 0.0;
    double c = 0.0;                  // kernel width parameter (cond0)
    double t = 0.0;                  // time parameter (u2)
    int d = 0;
    std::uint64_t seed = 0;
};

struct RefinementSchedule {
    int levels = 6;
    std::int64_t samples = 1 << 15;  // shared by all levels
    double r0 = 4.0;                 // R_k = r0 * r_growth^k
    double r_growth = 1.6;
    double eps0 = 0.25;              // eps_k = eps0 * eps_decay^k
    double eps_decay = 0.25;
};

/// sup_x of the local singular integral int_{|y-x|<=alpha} |V(y)| / |y-x|^{d-2} dy,
/// sampled over the potential's mass centers plus Monte Carlo probe points,
/// shell quadrature in the radius, Monte Carlo average on each sphere.
/// Requires d >= 3.
double kato_norm(const pot::PotentialSpec& v, double alpha, int sample_count,
                 std::uint64_t seed = 1);

/// Refinement report for the Kato criterion: values of kato_norm along a
/// decreasing alpha sequence; convergent means a positive power fit
/// (values vanish with alpha).
ConditionReport kato_report(const pot::PotentialSpec& v,
                            const std::vector<double>& alphas,
                            int sample_count, std::uint64_t seed = 1);

/// Double-integral conditions on |V_-| x |V_-| with kernels
///   cond0: exp(-c |w-w'|^2)            (whole space)
///   cond2: log(1/|w-w'|) on |w-w'|<1   (d = 4)
///   cond1: |w-w'|^{-(d-4)} on |w-w'|<1 (d >= 5)
/// The kernel factor is importance-sampled exactly (constant weight), so
/// the Monte Carlo variance comes from the potential factors alone.
/// Deterministic for a fixed seed, independent of the worker count.
ConditionReport condition_integral(const pot::PotentialSpec& v, ConditionId id,
                                   double c_param,
                                   const RefinementSchedule& schedule,
                                   std::uint64_t seed, int workers = 0);

/// alpha0 of the two-regime d=4 bound: the largest alpha in (0,1) with
/// int_alpha^inf v^{-1} e^{-v/2} dv <= 2 log(1/alpha); found by bisection
/// on the (strictly increasing) defect.
double find_alpha0();

/// int_from^inf v^power e^{-rate v} dv by adaptive quadrature.
double exp_tail_integral(double power, double from, double rate);

struct KernelBoundCheck {
    bool ok = true;
    double worst_ratio = 0.0;  // max over samples of lhs/rhs
    int samples = 0;
};

/// Pointwise check of the in-time integral bound
///   int_0^t u^{1-d/2} e^{-a/u} du <= C(d) e^{-a/(2t)} / |w-w'|^{d-4}  (d>=5)
/// and its two-regime log analog for d = 4, over sampled pair distances.
KernelBoundCheck u2_kernel_bound_check(int d, double t, int pair_count,
                                       std::uint64_t seed = 1);

struct U2Report {
    ConditionReport combined;  // refinement of I1 + I2
    double i1 = 0.0;
    double i2 = 0.0;
    double alpha0 = 0.0;
    KernelBoundCheck kernel_bound;
};

/// Time-integrated condition: splits the double time integral into the
/// triangle pieces I1 and I2, evaluates both with explicit heat-kernel
/// sampling in the pair difference, and checks the pointwise kernel
/// bounds along the way. Requires d >= 4.
U2Report u2_split(const pot::PotentialSpec& v, double t, int d,
                  const RefinementSchedule& schedule, std::uint64_t seed,
                  int workers = 0);

enum class LpRule {
    corollary1_range,
    corollary2_L1_kato,
    hls_endpoint,
    lieb_thirring_range,
    none
};

std::string to_string(LpRule r);

struct LpClassification {
    int d = 0;
    double p = 0.0;
    std::vector<LpRule> rules_fired;  // every rule that fires
    bool admissible = false;
    std::string note;
};

/// Pure table logic over the sufficiency ranges:
///   d >= 4, p in [2d/(d+4), 2]        (determinant-method range)
///   d >= 4, V_- in L^1 and Kato       (L^1 rule)
///   d >= 5, p = 2d/(d+4)              (endpoint via HLS)
///   moment-inequality ranges: d=1 p in [1,3/2], d=2 p in (1,2],
///   d>=3 p in [d/2, d/2+1].
LpClassification lp_classify(int d, double p, bool v_is_kato, bool v_in_l1);

struct LtResult {
    double value = 0.0;
    Verdict verdict = Verdict::inconclusive;
    std::vector<RefinementLevel> estimates;
    double growth_exponent = 0.0;
    double growth_r2 = 0.0;
};

/// int |V_-|^{d/2 + gamma} dw with the refinement machinery.
LtResult lt_quantity(const pot::PotentialSpec& v, int d, double gamma,
                     const RefinementSchedule& schedule, std::uint64_t seed,
                     int workers = 0);

}  // namespace eigensum::cond
