#include "eigensum/potential.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace eigensum::pot {

namespace {

double dist(std::span<const double> x, const std::vector<double>& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - (i < c.size() ? c[i] : 0.0);
        s += d * d;
    }
    return std::sqrt(s);
}

double norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ConfigError(where + "." + it.key(), "unknown key");
        }
    }
}

std::vector<double> center_from(const nlohmann::json& j, int d,
                                const std::string& where) {
    if (!j.contains("center")) return std::vector<double>(d, 0.0);
    auto c = j.at("center").get<std::vector<double>>();
    if (static_cast<int>(c.size()) != d) {
        throw ConfigError(where + ".center", "length must equal d");
    }
    return c;
}

}  // namespace

PotentialSpec::PotentialSpec(int dimension, std::vector<Term> terms)
    : d_(dimension), terms_(std::move(terms)) {
    if (d_ < 1) throw ConfigError("d", "dimension must be >= 1");
    for (const auto& t : terms_) {
        if (const auto* g = std::get_if<Gaussian>(&t)) {
            if (!(g->width > 0)) throw ConfigError("gaussian.width", "must be > 0");
        } else if (const auto* p = std::get_if<PowerTail>(&t)) {
            if (!(p->alpha > 0)) throw ConfigError("power_tail.alpha", "must be > 0");
        } else if (const auto* s = std::get_if<PowerSingularity>(&t)) {
            if (!(s->beta > 0)) throw ConfigError("power_singularity.beta", "must be > 0");
            if (s->cutoff < 0) throw ConfigError("power_singularity.cutoff", "must be >= 0");
        } else if (const auto* w = std::get_if<Well>(&t)) {
            if (!(w->halfwidth > 0)) throw ConfigError("well.halfwidth", "must be > 0");
        }
    }
}

double PotentialSpec::value(std::span<const double> x) const {
    double v = 0.0;
    for (const auto& t : terms_) {
        if (const auto* g = std::get_if<Gaussian>(&t)) {
            const double r = dist(x, g->center);
            v += g->amplitude * std::exp(-(r * r) / (g->width * g->width));
        } else if (const auto* p = std::get_if<PowerTail>(&t)) {
            v += p->amplitude * std::pow(1.0 + norm(x), -p->alpha);
        } else if (const auto* s = std::get_if<PowerSingularity>(&t)) {
            const double r = std::max(dist(x, s->center), s->cutoff);
            if (r == 0.0) {
                throw std::domain_error(
                    "potential evaluation at an uncut singular center");
            }
            v += s->amplitude * std::pow(r, -s->beta);
        } else if (const auto* w = std::get_if<Well>(&t)) {
            if (dist(x, w->center) <= w->halfwidth) v -= w->depth;
        }
    }
    return v;
}

double PotentialSpec::minus(std::span<const double> x) const {
    return std::min(value(x), 0.0);
}

double PotentialSpec::plus(std::span<const double> x) const {
    return std::max(value(x), 0.0);
}

PotentialSpec PotentialSpec::with_cutoff(double cutoff) const {
    std::vector<Term> out = terms_;
    for (auto& t : out) {
        if (auto* s = std::get_if<PowerSingularity>(&t)) s->cutoff = cutoff;
    }
    return PotentialSpec(d_, std::move(out));
}

std::vector<std::vector<double>> PotentialSpec::mass_centers() const {
    std::vector<std::vector<double>> centers;
    for (const auto& t : terms_) {
        if (const auto* g = std::get_if<Gaussian>(&t)) centers.push_back(g->center);
        if (const auto* s = std::get_if<PowerSingularity>(&t)) centers.push_back(s->center);
        if (const auto* w = std::get_if<Well>(&t)) centers.push_back(w->center);
    }
    if (centers.empty()) centers.emplace_back(d_, 0.0);
    return centers;
}

double PotentialSpec::mass_scale() const {
    double scale = 1.0;
    for (const auto& t : terms_) {
        if (const auto* g = std::get_if<Gaussian>(&t)) scale = std::max(scale, g->width);
        if (const auto* w = std::get_if<Well>(&t)) scale = std::max(scale, w->halfwidth);
    }
    return scale;
}

PotentialSpec PotentialSpec::from_json(const nlohmann::json& j) {
    require_keys(j, {"d", "form"}, "potential");
    if (!j.contains("d") || !j.contains("form")) {
        throw ConfigError("potential", "requires keys d and form");
    }
    const int d = j.at("d").get<int>();
    std::vector<Term> terms;
    for (const auto& tj : j.at("form")) {
        const std::string kind = tj.value("kind", "");
        if (kind == "gaussian") {
            require_keys(tj, {"kind", "amplitude", "center", "width"}, "gaussian");
            terms.push_back(Gaussian{tj.at("amplitude").get<double>(),
                                     center_from(tj, d, "gaussian"),
                                     tj.at("width").get<double>()});
        } else if (kind == "power_tail") {
            require_keys(tj, {"kind", "amplitude", "alpha"}, "power_tail");
            terms.push_back(PowerTail{tj.at("amplitude").get<double>(),
                                      tj.at("alpha").get<double>()});
        } else if (kind == "power_singularity") {
            require_keys(tj, {"kind", "amplitude", "beta", "center", "cutoff"},
                         "power_singularity");
            terms.push_back(PowerSingularity{
                tj.at("amplitude").get<double>(), tj.at("beta").get<double>(),
                center_from(tj, d, "power_singularity"), tj.value("cutoff", 0.0)});
        } else if (kind == "well") {
            require_keys(tj, {"kind", "depth", "center", "halfwidth"}, "well");
            terms.push_back(Well{tj.at("depth").get<double>(),
                                 center_from(tj, d, "well"),
                                 tj.at("halfwidth").get<double>()});
        } else {
            throw ConfigError("potential.form.kind", "unknown kind '" + kind + "'");
        }
    }
    return PotentialSpec(d, std::move(terms));
}

nlohmann::json PotentialSpec::to_json() const {
    nlohmann::json form = nlohmann::json::array();
    for (const auto& t : terms_) {
        nlohmann::json tj;
        if (const auto* g = std::get_if<Gaussian>(&t)) {
            tj = {{"kind", "gaussian"},
                  {"amplitude", g->amplitude},
                  {"center", g->center},
                  {"width", g->width}};
        } else if (const auto* p = std::get_if<PowerTail>(&t)) {
            tj = {{"kind", "power_tail"},
                  {"amplitude", p->amplitude},
                  {"alpha", p->alpha}};
        } else if (const auto* s = std::get_if<PowerSingularity>(&t)) {
            tj = {{"kind", "power_singularity"},
                  {"amplitude", s->amplitude},
                  {"beta", s->beta},
                  {"center", s->center},
                  {"cutoff", s->cutoff}};
        } else if (const auto* w = std::get_if<Well>(&t)) {
            tj = {{"kind", "well"},
                  {"depth", w->depth},
                  {"center", w->center},
                  {"halfwidth", w->halfwidth}};
        }
        form.push_back(tj);
    }
    return {{"d", d_}, {"form", form}};
}

PotentialSpec zero_potential(int d) { return PotentialSpec(d, {}); }

}  // namespace eigensum::pot
