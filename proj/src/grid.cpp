#include "eigensum/grid.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "eigensum/parallel.hpp"

namespace eigensum::grid {

double GridSpec::cell_volume() const {
    return std::pow(spacing(), d);
}

int GridSpec::total_points() const {
    int total = 1;
    for (int k = 0; k < d; ++k) total *= points_per_axis;
    return total;
}

std::vector<double> GridSpec::axis_points() const {
    const double h = spacing();
    std::vector<double> xs(points_per_axis);
    for (int i = 0; i < points_per_axis; ++i) xs[i] = -extent + i * h;
    return xs;
}

std::vector<double> GridSpec::point(int flat_index) const {
    std::vector<double> x(d);
    const double h = spacing();
    int rem = flat_index;
    for (int axis = d - 1; axis >= 0; --axis) {
        x[axis] = -extent + (rem % points_per_axis) * h;
        rem /= points_per_axis;
    }
    return x;
}

void GridSpec::validate() const {
    if (d < 1 || d > 3) throw ConfigError("grid.d", "dimension must be 1, 2 or 3");
    if (!(extent > 0)) throw ConfigError("grid.extent", "must be > 0");
    if (points_per_axis < 3) throw ConfigError("grid.points_per_axis", "must be >= 3");
    if (total_points() > 4096 && !allow_large) {
        throw ConfigError("grid.points_per_axis",
                          "total unknowns " + std::to_string(total_points()) +
                              " exceed the desk-scale guard of 4096; set "
                              "allow_large to override");
    }
}

DiscreteOperator build_laplacian(const GridSpec& g) {
    g.validate();
    const int n = g.total_points();
    const int na = g.points_per_axis;
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());

    linalg::Matrix m = linalg::Matrix::Zero(n, n);
    // strides of each axis in the flat row-major index
    int stride[3] = {0, 0, 0};
    {
        int s = 1;
        for (int axis = g.d - 1; axis >= 0; --axis) {
            stride[axis] = s;
            s *= na;
        }
    }
    for (int i = 0; i < n; ++i) {
        m(i, i) = 2.0 * g.d * inv_h2;
        int rem = i;
        int coord[3] = {0, 0, 0};
        for (int axis = g.d - 1; axis >= 0; --axis) {
            coord[axis] = rem % na;
            rem /= na;
        }
        for (int axis = 0; axis < g.d; ++axis) {
            for (int dir : {-1, +1}) {
                const int c = coord[axis] + dir;
                if (g.boundary == Boundary::dirichlet) {
                    if (c < 0 || c >= na) continue;  // zero ghost value
                    m(i, i + dir * stride[axis]) -= inv_h2;
                } else {
                    const int cw = (c + na) % na;
                    const int j = i + (cw - coord[axis]) * stride[axis];
                    m(i, j) -= inv_h2;
                }
            }
        }
    }
    return DiscreteOperator{g, linalg::SymMatrix(std::move(m), g.cell_volume()),
                            OperatorKind::free, std::nullopt};
}

DiscreteOperator assemble(const GridSpec& g, const pot::PotentialSpec& v,
                          PotentialPart part) {
    if (v.dimension() != g.d) {
        throw ConfigError("potential.d", "potential dimension " +
                                             std::to_string(v.dimension()) +
                                             " != grid dimension " +
                                             std::to_string(g.d));
    }
    DiscreteOperator lap = build_laplacian(g);
    // regularize any raw singular term at the grid scale
    pot::PotentialSpec vv = v;
    for (const auto& term : v.terms()) {
        if (const auto* s = std::get_if<pot::PowerSingularity>(&term)) {
            if (s->cutoff == 0.0) {
                vv = v.with_cutoff(0.5 * g.spacing());
                break;
            }
        }
    }

    const int n = g.total_points();
    linalg::Matrix m = lap.matrix.entries();
    std::vector<double> diag(n);
    par::parallel_for(n, 0, [&](std::int64_t i) {
        const auto x = g.point(static_cast<int>(i));
        double val;
        try {
            val = part == PotentialPart::minus_only ? vv.minus(x) : vv.value(x);
        } catch (const std::exception&) {
            val = std::numeric_limits<double>::quiet_NaN();
        }
        diag[static_cast<std::size_t>(i)] =
            std::isfinite(val) ? val : std::numeric_limits<double>::quiet_NaN();
    });
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(diag[i])) {
            throw ConfigError("potential",
                              "potential not evaluable at grid node " +
                                  std::to_string(i));
        }
        m(i, i) += diag[i];
    }
    return DiscreteOperator{g, linalg::SymMatrix(std::move(m), g.cell_volume()),
                            OperatorKind::with_potential, vv};
}

double direct_negative_sum(const linalg::SymMatrix& m, double threshold) {
    const auto d = linalg::eigh(m);
    double sum = 0.0;
    for (int i = 0; i < d.values.size(); ++i) {
        if (d.values(i) < -threshold) sum += -d.values(i);
    }
    return sum;
}

double direct_negative_sum(const DiscreteOperator& op, double threshold) {
    return direct_negative_sum(op.matrix, threshold);
}

std::pair<double, double> minmax_check(const GridSpec& g,
                                       const pot::PotentialSpec& v) {
    const double sum_full =
        direct_negative_sum(assemble(g, v, PotentialPart::full));
    const double sum_minus =
        direct_negative_sum(assemble(g, v, PotentialPart::minus_only));
    return {sum_full, sum_minus};
}

}  // namespace eigensum::grid
