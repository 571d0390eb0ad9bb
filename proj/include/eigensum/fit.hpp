#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace eigensum::fit {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

inline LinearFit linear(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    LinearFit f;
    if (n < 2) return f;
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0) return f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

/// Fit y ~ C * x^slope through log-log regression. Requires positive data;
/// nonpositive y values are clamped to the smallest positive one seen.
inline LinearFit loglog(std::span<const double> x, std::span<const double> y) {
    std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    double floor_y = 1e-300;
    for (std::size_t i = 0; i < n; ++i) {
        if (y[i] > floor_y && std::isfinite(y[i])) floor_y = y[i];
    }
    floor_y *= 1e-14;
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = std::log(x[i]);
        ly[i] = std::log(std::max(y[i], floor_y));
    }
    return linear(lx, ly);
}

}  // namespace eigensum::fit
