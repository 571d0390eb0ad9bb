#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "eigensum/linalg.hpp"
#include "eigensum/potential.hpp"

namespace eigensum::grid {

enum class Boundary { dirichlet, periodic };

/// Uniform grid on the box [-L, L]^d, d in {1,2,3}.
/// Dirichlet: points include both box faces, spacing h = 2L/(n-1); the
/// homogeneous boundary data lives on the ghost layer outside the box.
/// Periodic: points cover [-L, L), spacing h = 2L/n.
struct GridSpec {
    int d = 1;
    double extent = 1.0;       // L
    int points_per_axis = 3;   // >= 3
    Boundary boundary = Boundary::dirichlet;
    bool allow_large = false;  // lifts the desk-scale unknown-count guard

    double spacing() const {
        return boundary == Boundary::dirichlet
                   ? 2.0 * extent / (points_per_axis - 1)
                   : 2.0 * extent / points_per_axis;
    }
    double cell_volume() const;
    int total_points() const;
    std::vector<double> axis_points() const;
    /// Coordinates of flat grid index (row-major over axes).
    std::vector<double> point(int flat_index) const;

    void validate() const;
};

enum class OperatorKind { free, with_potential };

struct DiscreteOperator {
    GridSpec grid;
    linalg::SymMatrix matrix;  // basis_weight = cell volume
    OperatorKind kind;
    std::optional<pot::PotentialSpec> potential;
};

/// -Laplace_h with the (2d)-point second-order stencil scaled by 1/h^2.
DiscreteOperator build_laplacian(const GridSpec& g);

enum class PotentialPart { minus_only, full };

/// Laplacian plus the diagonal of sampled potential values. Singular terms
/// with cutoff 0 get the default grid cutoff h/2.
DiscreteOperator assemble(const GridSpec& g, const pot::PotentialSpec& v,
                          PotentialPart part);

/// Sum of |lambda| over eigenvalues below -threshold.
double direct_negative_sum(const DiscreteOperator& op,
                           double threshold = 1e-12);
double direct_negative_sum(const linalg::SymMatrix& m,
                           double threshold = 1e-12);

/// (sum over sigma^-(-Lap+V), sum over sigma^-(-Lap+V_-)); the first never
/// exceeds the second.
std::pair<double, double> minmax_check(const GridSpec& g,
                                       const pot::PotentialSpec& v);

}  // namespace eigensum::grid
