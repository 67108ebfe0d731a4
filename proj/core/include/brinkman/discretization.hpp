#pragma once

#include <string>
#include <vector>

#include "brinkman/boundary.hpp"
#include "brinkman/grid.hpp"
#include "brinkman/media.hpp"
#include "brinkman/sparse.hpp"

namespace brinkman {

/// Face-centered body force, u block (n_u) and v block (n_v).
struct ForcingField {
    std::vector<double> f_u;
    std::vector<double> f_v;
};

ForcingField zero_forcing(const StaggeredGrid& grid);
ForcingField forcing_from_function(const StaggeredGrid& grid, const VelocityFunction& f);

/// Five-point vector Laplacian on the velocity faces, (n_u + n_v)^2.
///
/// Rows of boundary-normal faces are empty. Next to a wall, the tangential
/// neighbour is a ghost value 2 g_wall - u_interior; the -u_interior part is
/// folded into the diagonal and the 2 g_wall part is returned by
/// laplacian_boundary_contribution, so that lap(u) = L u + b_L.
SparseMatrix assemble_laplacian(const StaggeredGrid& grid);
std::vector<double> laplacian_boundary_contribution(const StaggeredGrid& grid, const BoundaryData& bc);

/// (n_u + n_v) x n_p. Pressure difference across each interior face divided by
/// the spacing; boundary-normal rows are empty.
SparseMatrix assemble_gradient(const StaggeredGrid& grid);
/// n_p x (n_u + n_v). Net outward flux of each cell divided by the cell size.
SparseMatrix assemble_divergence(const StaggeredGrid& grid);

/// Diagonal 1/k at each velocity face: inverse harmonic mean of the two
/// adjacent cells (kstar_xx for u, kstar_yy for v), single cell on the boundary.
SparseMatrix assemble_drag(const StaggeredGrid& grid, const NormalizedPermeability& kstar);

struct AssemblyOptions {
    /// Replace the first continuity row by p_0 = 0.
    bool pin_pressure = false;
    /// Drop K*^-1 from the momentum block (Stokes oracle).
    bool include_drag = true;
};

/// Saddle-point system [[A, G], [D, 0]] [U; P] = rhs with A = -anna L + K*^-1.
struct MonolithicSystem {
    SparseMatrix matrix;
    std::vector<double> rhs;
    double anna = 0.0;
    StaggeredGrid grid{1, 1};
    bool pinned_pressure = false;
    double net_boundary_flux = 0.0;
    std::vector<std::string> warnings;
};

/// anna >= 0; anna = 0 yields the mixed Darcy system.
MonolithicSystem assemble_monolithic(const StaggeredGrid& grid, const NormalizedPermeability& kstar, double anna,
                                     const BoundaryData& bc, const ForcingField& f,
                                     const AssemblyOptions& options = {});
/// Zero forcing overload.
MonolithicSystem assemble_monolithic(const StaggeredGrid& grid, const NormalizedPermeability& kstar, double anna,
                                     const BoundaryData& bc, const AssemblyOptions& options = {});

/// Mixed Darcy system [[K*^-1, G], [D, 0]] with boundary-normal data only.
MonolithicSystem assemble_darcy_oracle(const StaggeredGrid& grid, const NormalizedPermeability& kstar,
                                       const BoundaryData& bc, const ForcingField& f,
                                       const AssemblyOptions& options = {});

/// Views of a monolithic solution vector split by block.
struct FlowFields {
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> p;

    /// u block followed by v block.
    std::vector<double> velocity() const;
};

FlowFields split_solution(const StaggeredGrid& grid, const std::vector<double>& x);

}  // namespace brinkman
