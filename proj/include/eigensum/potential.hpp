#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "eigensum/errors.hpp"

namespace eigensum::pot {

// Composable analytic potential terms. A potential is a sum of terms, each
// carrying its own sign through its amplitude (wells are negative by
// definition). V_- = min(V, 0), V_+ = max(V, 0).

struct Gaussian {
    double amplitude;
    std::vector<double> center;
    double width;  // V += amplitude * exp(-|x-c|^2 / width^2)
};

struct PowerTail {
    double amplitude;
    double alpha;  // V += amplitude * (1 + |x|)^{-alpha}
};

/// amplitude * |x - c|^{-beta}, evaluated at radius max(|x-c|, cutoff).
/// The cutoff regularizes grid sampling; condition integrals that want the
/// raw singularity evaluate with cutoff 0 through raw_singularity().
struct PowerSingularity {
    double amplitude;
    double beta;
    std::vector<double> center;
    double cutoff;
};

struct Well {
    double depth;  // V += -depth inside the ball |x-c| <= halfwidth
    std::vector<double> center;
    double halfwidth;
};

using Term = std::variant<Gaussian, PowerTail, PowerSingularity, Well>;

class PotentialSpec {
public:
    PotentialSpec(int dimension, std::vector<Term> terms);

    int dimension() const { return d_; }
    const std::vector<Term>& terms() const { return terms_; }

    double value(std::span<const double> x) const;
    double minus(std::span<const double> x) const;  // <= 0
    double plus(std::span<const double> x) const;   // >= 0

    /// Copy with all singularity cutoffs replaced (used by grid assembly,
    /// which defaults cutoffs to h/2, and by condition integrals, which
    /// want the unregularized form).
    PotentialSpec with_cutoff(double cutoff) const;

    /// Centers of mass concentration, used by importance-sampling
    /// proposals. Always contains at least the origin.
    std::vector<std::vector<double>> mass_centers() const;
    /// A representative length scale of the mass around each center.
    double mass_scale() const;

    static PotentialSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

private:
    int d_;
    std::vector<Term> terms_;
};

/// V identically zero in dimension d.
PotentialSpec zero_potential(int d);

}  // namespace eigensum::pot
