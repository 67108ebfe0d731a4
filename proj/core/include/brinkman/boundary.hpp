#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "brinkman/grid.hpp"

namespace brinkman {

/// Dirichlet velocity data on the four walls of the rectangle.
///
/// Normal components sit on boundary faces and become identity rows.
/// Tangential components are sampled at the face lattice points along each
/// wall and enter the Laplacian through ghost reflection.
struct BoundaryData {
    std::vector<double> left_u;    ///< u at x = 0, per row j (ny)
    std::vector<double> right_u;   ///< u at x = lx, per row j (ny)
    std::vector<double> bottom_v;  ///< v at y = 0, per column i (nx)
    std::vector<double> top_v;     ///< v at y = ly, per column i (nx)
    std::vector<double> bottom_u;  ///< tangential u at y = 0, per u-column i (nx+1)
    std::vector<double> top_u;     ///< tangential u at y = ly, per u-column i (nx+1)
    std::vector<double> left_v;    ///< tangential v at x = 0, per v-row j (ny+1)
    std::vector<double> right_v;   ///< tangential v at x = lx, per v-row j (ny+1)

    /// Throws std::invalid_argument if any wall array has the wrong length.
    void check_sizes(const StaggeredGrid& grid) const;

    /// Outward normal flux summed over the boundary, weighted by face length.
    double net_flux(const StaggeredGrid& grid) const;
    bool compatible(const StaggeredGrid& grid, double tol = 1e-12) const;

    /// Value prescribed for a boundary-normal velocity DOF.
    double normal_value(const StaggeredGrid& grid, const DofIndex& dof) const;
};

/// g = (gx, gy) on every wall.
BoundaryData uniform_boundary(const StaggeredGrid& grid, double gx, double gy);

using VelocityFunction = std::function<std::pair<double, double>(double x, double y)>;

/// Samples g(x, y) at the boundary face midpoints and wall lattice points.
BoundaryData boundary_from_function(const StaggeredGrid& grid, const VelocityFunction& g);

}  // namespace brinkman
