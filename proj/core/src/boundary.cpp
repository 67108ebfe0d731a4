#include "brinkman/boundary.hpp"

#include <cmath>
#include <stdexcept>

namespace brinkman {

void BoundaryData::check_sizes(const StaggeredGrid& grid) const {
    const auto nx = static_cast<std::size_t>(grid.nx());
    const auto ny = static_cast<std::size_t>(grid.ny());
    if (left_u.size() != ny || right_u.size() != ny || bottom_v.size() != nx || top_v.size() != nx ||
        bottom_u.size() != nx + 1 || top_u.size() != nx + 1 || left_v.size() != ny + 1 || right_v.size() != ny + 1) {
        throw std::invalid_argument("boundary data does not match the grid dimensions");
    }
}

double BoundaryData::net_flux(const StaggeredGrid& grid) const {
    check_sizes(grid);
    double flux = 0.0;
    for (int j = 0; j < grid.ny(); ++j) flux += (right_u[j] - left_u[j]) * grid.dy();
    for (int i = 0; i < grid.nx(); ++i) flux += (top_v[i] - bottom_v[i]) * grid.dx();
    return flux;
}

bool BoundaryData::compatible(const StaggeredGrid& grid, double tol) const {
    return std::abs(net_flux(grid)) <= tol;
}

double BoundaryData::normal_value(const StaggeredGrid& grid, const DofIndex& dof) const {
    switch (dof.kind) {
        case DofKind::UFace:
            if (dof.i == 0) return left_u.at(dof.j);
            if (dof.i == grid.nx()) return right_u.at(dof.j);
            break;
        case DofKind::VFace:
            if (dof.j == 0) return bottom_v.at(dof.i);
            if (dof.j == grid.ny()) return top_v.at(dof.i);
            break;
        case DofKind::Pressure: break;
    }
    throw std::invalid_argument("normal_value: DOF is not a boundary velocity face");
}

BoundaryData uniform_boundary(const StaggeredGrid& grid, double gx, double gy) {
    const auto nx = static_cast<std::size_t>(grid.nx());
    const auto ny = static_cast<std::size_t>(grid.ny());
    return BoundaryData{std::vector<double>(ny, gx),     std::vector<double>(ny, gx),
                        std::vector<double>(nx, gy),     std::vector<double>(nx, gy),
                        std::vector<double>(nx + 1, gx), std::vector<double>(nx + 1, gx),
                        std::vector<double>(ny + 1, gy), std::vector<double>(ny + 1, gy)};
}

BoundaryData boundary_from_function(const StaggeredGrid& grid, const VelocityFunction& g) {
    BoundaryData bc = uniform_boundary(grid, 0.0, 0.0);
    const double lx = grid.lx();
    const double ly = grid.ly();
    for (int j = 0; j < grid.ny(); ++j) {
        const double y = (j + 0.5) * grid.dy();
        bc.left_u[j] = g(0.0, y).first;
        bc.right_u[j] = g(lx, y).first;
    }
    for (int i = 0; i < grid.nx(); ++i) {
        const double x = (i + 0.5) * grid.dx();
        bc.bottom_v[i] = g(x, 0.0).second;
        bc.top_v[i] = g(x, ly).second;
    }
    for (int i = 0; i <= grid.nx(); ++i) {
        const double x = i * grid.dx();
        bc.bottom_u[i] = g(x, 0.0).first;
        bc.top_u[i] = g(x, ly).first;
    }
    for (int j = 0; j <= grid.ny(); ++j) {
        const double y = j * grid.dy();
        bc.left_v[j] = g(0.0, y).second;
        bc.right_v[j] = g(lx, y).second;
    }
    return bc;
}

}  // namespace brinkman
