#include "brinkman/discretization.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "brinkman/errors.hpp"

namespace brinkman {

ForcingField zero_forcing(const StaggeredGrid& grid) {
    return {std::vector<double>(grid.n_u(), 0.0), std::vector<double>(grid.n_v(), 0.0)};
}

ForcingField forcing_from_function(const StaggeredGrid& grid, const VelocityFunction& f) {
    ForcingField out = zero_forcing(grid);
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i <= grid.nx(); ++i) {
            const auto [x, y] = grid.position({DofKind::UFace, i, j});
            out.f_u[grid.u(i, j)] = f(x, y).first;
        }
    }
    for (int j = 0; j <= grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const auto [x, y] = grid.position({DofKind::VFace, i, j});
            out.f_v[grid.v(i, j) - grid.v_offset()] = f(x, y).second;
        }
    }
    return out;
}

SparseMatrix assemble_laplacian(const StaggeredGrid& grid) {
    const int nx = grid.nx();
    const int ny = grid.ny();
    const double ax = 1.0 / (grid.dx() * grid.dx());
    const double ay = 1.0 / (grid.dy() * grid.dy());
    std::vector<Triplet> t;
    t.reserve(5 * grid.n_velocity());

    for (int j = 0; j < ny; ++j) {
        for (int i = 1; i < nx; ++i) {
            const std::size_t r = grid.u(i, j);
            double diag = -2.0 * ax - 2.0 * ay;
            t.push_back({r, grid.u(i - 1, j), ax});
            t.push_back({r, grid.u(i + 1, j), ax});
            if (j > 0) t.push_back({r, grid.u(i, j - 1), ay}); else diag -= ay;
            if (j < ny - 1) t.push_back({r, grid.u(i, j + 1), ay}); else diag -= ay;
            t.push_back({r, r, diag});
        }
    }
    for (int j = 1; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const std::size_t r = grid.v(i, j);
            double diag = -2.0 * ax - 2.0 * ay;
            t.push_back({r, grid.v(i, j - 1), ay});
            t.push_back({r, grid.v(i, j + 1), ay});
            if (i > 0) t.push_back({r, grid.v(i - 1, j), ax}); else diag -= ax;
            if (i < nx - 1) t.push_back({r, grid.v(i + 1, j), ax}); else diag -= ax;
            t.push_back({r, r, diag});
        }
    }
    return SparseMatrix::from_triplets(grid.n_velocity(), grid.n_velocity(), std::move(t));
}

std::vector<double> laplacian_boundary_contribution(const StaggeredGrid& grid, const BoundaryData& bc) {
    bc.check_sizes(grid);
    const int nx = grid.nx();
    const int ny = grid.ny();
    const double ax = 1.0 / (grid.dx() * grid.dx());
    const double ay = 1.0 / (grid.dy() * grid.dy());
    std::vector<double> b(grid.n_velocity(), 0.0);
    for (int i = 1; i < nx; ++i) {
        b[grid.u(i, 0)] += 2.0 * ay * bc.bottom_u[i];
        b[grid.u(i, ny - 1)] += 2.0 * ay * bc.top_u[i];
    }
    for (int j = 1; j < ny; ++j) {
        b[grid.v(0, j)] += 2.0 * ax * bc.left_v[j];
        b[grid.v(nx - 1, j)] += 2.0 * ax * bc.right_v[j];
    }
    return b;
}

SparseMatrix assemble_gradient(const StaggeredGrid& grid) {
    const int nx = grid.nx();
    const int ny = grid.ny();
    const double gx = 1.0 / grid.dx();
    const double gy = 1.0 / grid.dy();
    std::vector<Triplet> t;
    t.reserve(2 * grid.n_velocity());
    for (int j = 0; j < ny; ++j) {
        for (int i = 1; i < nx; ++i) {
            t.push_back({grid.u(i, j), grid.cell(i, j), gx});
            t.push_back({grid.u(i, j), grid.cell(i - 1, j), -gx});
        }
    }
    for (int j = 1; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            t.push_back({grid.v(i, j), grid.cell(i, j), gy});
            t.push_back({grid.v(i, j), grid.cell(i, j - 1), -gy});
        }
    }
    return SparseMatrix::from_triplets(grid.n_velocity(), grid.n_p(), std::move(t));
}

SparseMatrix assemble_divergence(const StaggeredGrid& grid) {
    const double gx = 1.0 / grid.dx();
    const double gy = 1.0 / grid.dy();
    std::vector<Triplet> t;
    t.reserve(4 * grid.n_p());
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const std::size_t c = grid.cell(i, j);
            t.push_back({c, grid.u(i, j), -gx});
            t.push_back({c, grid.u(i + 1, j), gx});
            t.push_back({c, grid.v(i, j), -gy});
            t.push_back({c, grid.v(i, j + 1), gy});
        }
    }
    return SparseMatrix::from_triplets(grid.n_p(), grid.n_velocity(), std::move(t));
}

namespace {

double inverse_harmonic(double a, double b) { return (a + b) / (2.0 * a * b); }

void check_kstar(const StaggeredGrid& grid, const NormalizedPermeability& kstar) {
    if (kstar.nx != grid.nx() || kstar.ny != grid.ny() || kstar.kstar_xx.size() != grid.n_p() ||
        kstar.kstar_yy.size() != grid.n_p()) {
        throw std::invalid_argument("permeability field does not match the grid");
    }
    for (std::size_t c = 0; c < grid.n_p(); ++c) {
        if (!(kstar.kstar_xx[c] > 0.0) || !(kstar.kstar_yy[c] > 0.0)) {
            std::ostringstream msg;
            msg << "zero or negative permeability in cell " << c << ": drag coefficient is singular";
            throw SingularDragError(msg.str());
        }
    }
}

}  // namespace

SparseMatrix assemble_drag(const StaggeredGrid& grid, const NormalizedPermeability& kstar) {
    check_kstar(grid, kstar);
    const int nx = grid.nx();
    const int ny = grid.ny();
    const auto& kx = kstar.kstar_xx;
    const auto& ky = kstar.kstar_yy;
    std::vector<double> d(grid.n_velocity());
    for (int j = 0; j < ny; ++j) {
        d[grid.u(0, j)] = 1.0 / kx[grid.cell(0, j)];
        d[grid.u(nx, j)] = 1.0 / kx[grid.cell(nx - 1, j)];
        for (int i = 1; i < nx; ++i) d[grid.u(i, j)] = inverse_harmonic(kx[grid.cell(i - 1, j)], kx[grid.cell(i, j)]);
    }
    for (int i = 0; i < nx; ++i) {
        d[grid.v(i, 0)] = 1.0 / ky[grid.cell(i, 0)];
        d[grid.v(i, ny)] = 1.0 / ky[grid.cell(i, ny - 1)];
        for (int j = 1; j < ny; ++j) d[grid.v(i, j)] = inverse_harmonic(ky[grid.cell(i, j - 1)], ky[grid.cell(i, j)]);
    }
    return SparseMatrix::diagonal(d);
}

namespace {

struct MomentumParts {
    const SparseMatrix* laplacian;  // null for the Darcy oracle
    const SparseMatrix* drag;       // null for the Stokes oracle
    std::vector<double> boundary;   // already multiplied by anna
};

MonolithicSystem assemble_blocks(const StaggeredGrid& grid, double anna, const MomentumParts& parts,
                                 const BoundaryData& bc, const ForcingField& f, const AssemblyOptions& options) {
    bc.check_sizes(grid);
    if (f.f_u.size() != grid.n_u() || f.f_v.size() != grid.n_v()) {
        throw std::invalid_argument("forcing field does not match the grid");
    }
    const SparseMatrix gradient = assemble_gradient(grid);
    const SparseMatrix divergence = assemble_divergence(grid);
    const std::size_t n = grid.n_total();
    const std::size_t p0 = grid.p_offset();

    MonolithicSystem sys;
    sys.anna = anna;
    sys.grid = grid;
    sys.pinned_pressure = options.pin_pressure;
    sys.rhs.assign(n, 0.0);
    sys.net_boundary_flux = bc.net_flux(grid);

    std::vector<Triplet> t;
    t.reserve(8 * grid.n_velocity() + 4 * grid.n_p());

    for (std::size_t r = 0; r < grid.n_velocity(); ++r) {
        const DofIndex dof = grid.dof_of(r);
        if (grid.is_boundary(dof)) {
            t.push_back({r, r, 1.0});
            sys.rhs[r] = bc.normal_value(grid, dof);
            continue;
        }
        if (parts.laplacian != nullptr) {
            const auto cols = parts.laplacian->row_cols(r);
            const auto vals = parts.laplacian->row_values(r);
            for (std::size_t k = 0; k < cols.size(); ++k) t.push_back({r, cols[k], -anna * vals[k]});
        }
        if (parts.drag != nullptr) t.push_back({r, r, parts.drag->at(r, r)});
        const auto gcols = gradient.row_cols(r);
        const auto gvals = gradient.row_values(r);
        for (std::size_t k = 0; k < gcols.size(); ++k) t.push_back({r, p0 + gcols[k], gvals[k]});
        const double force = dof.kind == DofKind::UFace ? f.f_u[r] : f.f_v[r - grid.v_offset()];
        sys.rhs[r] = force + (parts.boundary.empty() ? 0.0 : parts.boundary[r]);
    }
    for (std::size_t c = 0; c < grid.n_p(); ++c) {
        const std::size_t r = p0 + c;
        if (options.pin_pressure && c == 0) {
            t.push_back({r, r, 1.0});
            continue;
        }
        const auto cols = divergence.row_cols(c);
        const auto vals = divergence.row_values(c);
        for (std::size_t k = 0; k < cols.size(); ++k) t.push_back({r, cols[k], vals[k]});
    }
    sys.matrix = SparseMatrix::from_triplets(n, n, std::move(t));

    if (!options.pin_pressure && !bc.compatible(grid)) {
        std::ostringstream msg;
        msg << "boundary data has net flux " << sys.net_boundary_flux
            << "; the unpinned system is singular and this right-hand side is incompatible";
        sys.warnings.push_back(msg.str());
    }
    return sys;
}

}  // namespace

MonolithicSystem assemble_monolithic(const StaggeredGrid& grid, const NormalizedPermeability& kstar, double anna,
                                     const BoundaryData& bc, const ForcingField& f, const AssemblyOptions& options) {
    if (!(anna >= 0.0) || !std::isfinite(anna)) {
        throw std::invalid_argument("assemble_monolithic: anna must be finite and non-negative");
    }
    const SparseMatrix laplacian = assemble_laplacian(grid);
    const SparseMatrix drag = assemble_drag(grid, kstar);
    std::vector<double> boundary = laplacian_boundary_contribution(grid, bc);
    for (double& b : boundary) b *= anna;
    MomentumParts parts{&laplacian, options.include_drag ? &drag : nullptr, std::move(boundary)};
    return assemble_blocks(grid, anna, parts, bc, f, options);
}

MonolithicSystem assemble_monolithic(const StaggeredGrid& grid, const NormalizedPermeability& kstar, double anna,
                                     const BoundaryData& bc, const AssemblyOptions& options) {
    return assemble_monolithic(grid, kstar, anna, bc, zero_forcing(grid), options);
}

MonolithicSystem assemble_darcy_oracle(const StaggeredGrid& grid, const NormalizedPermeability& kstar,
                                       const BoundaryData& bc, const ForcingField& f,
                                       const AssemblyOptions& options) {
    const SparseMatrix drag = assemble_drag(grid, kstar);
    MomentumParts parts{nullptr, &drag, {}};
    return assemble_blocks(grid, 0.0, parts, bc, f, options);
}

std::vector<double> FlowFields::velocity() const {
    std::vector<double> out(u);
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

FlowFields split_solution(const StaggeredGrid& grid, const std::vector<double>& x) {
    if (x.size() != grid.n_total()) throw std::invalid_argument("split_solution: vector size does not match grid");
    const auto begin = x.begin();
    return FlowFields{std::vector<double>(begin, begin + static_cast<long>(grid.n_u())),
                      std::vector<double>(begin + static_cast<long>(grid.v_offset()),
                                          begin + static_cast<long>(grid.p_offset())),
                      std::vector<double>(begin + static_cast<long>(grid.p_offset()), x.end())};
}

}  // namespace brinkman
