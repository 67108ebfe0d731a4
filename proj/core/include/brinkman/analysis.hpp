#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brinkman/boundary.hpp"
#include "brinkman/discretization.hpp"
#include "brinkman/grid.hpp"
#include "brinkman/media.hpp"
#include "brinkman/scaling.hpp"
#include "brinkman/solvers.hpp"
#include "brinkman/spectral.hpp"

namespace brinkman {

/// Largest |(D u)_c| over cells; `velocity` is the u block followed by the v block.
double check_divergence(const StaggeredGrid& grid, std::span<const double> velocity);

/// ||M (0_velocity, 1_pressure)||_inf / ||M||_inf.
double nullspace_residual(const MonolithicSystem& system);

enum class KappaMode { Pinned, Unpinned, None };

KappaMode parse_kappa_mode(std::string_view name);
const char* to_string(KappaMode mode) noexcept;

struct RegimeRow {
    double da = 0.0;
    double anna = 0.0;
    std::optional<double> kappa;
    /// ok | singular | nullspace_excluded | omitted | none
    std::string kappa_flag = "none";
    std::size_t iterations = 0;
    bool converged = false;
    double final_relres = 0.0;
    Regime regime = Regime::Darcy;
    double wall_time = 0.0;
    double max_divergence = 0.0;
    double velocity_norm = 0.0;
};

struct SweepOptions {
    double viscosity_ratio = 1.0;
    SolverConfig solver;
    /// Pinning of the system handed to GMRES.
    bool pin_pressure = false;
    KappaMode kappa = KappaMode::Pinned;
    RegimeThresholds thresholds;
    /// Sweep points solved concurrently; rows are ordered by da regardless.
    unsigned threads = 1;
};

struct RegimeTable {
    std::vector<RegimeRow> rows;
    int nx = 0;
    int ny = 0;
    std::string field_descriptor;
    SweepOptions options;

    bool all_converged() const;
};

/// One GMRES solve per Da on a fixed normalized field, anna = viscosity_ratio * Da.
/// Throws std::invalid_argument unless da_values is nonempty, positive and
/// strictly ascending.
RegimeTable sweep_darcy(const StaggeredGrid& grid, const PermeabilityField& field, std::span<const double> da_values,
                        const BoundaryData& bc, const SweepOptions& options = {},
                        std::string field_descriptor = {});

/// Header `da,anna,kappa,kappa_flag,iterations,relres,regime,wall_ms`.
/// With `timing` false the wall_ms column is written as 0 so that reruns are
/// byte-identical.
std::string format_regime_csv(const RegimeTable& table, bool timing = true);
/// `re,im` per eigenvalue.
std::string format_spectrum_csv(const Spectrum& spectrum);

/// Smooth divergence-free solution of the scaled Brinkman problem on (0,1)^2:
/// u = curl of psi = sin^2(pi x) sin^2(pi y) / pi, p = cos(pi x) cos(pi y).
struct ManufacturedSolution {
    double anna = 1.0;
    double kstar = 1.0;

    std::pair<double, double> velocity(double x, double y) const;
    double pressure(double x, double y) const;
    /// Analytic -anna lap(u) + u / kstar + grad p.
    std::pair<double, double> forcing(double x, double y) const;
};

struct ConvergenceStudy {
    std::vector<int> levels;
    std::vector<double> velocity_errors;
    std::vector<double> pressure_errors;
    /// log2(e_h / e_{h/2}) for each consecutive pair of levels.
    std::vector<double> velocity_orders;
    std::vector<double> pressure_orders;
};

/// Solves the manufactured problem on nx = ny = level grids with the direct
/// solver (pinned pressure). Errors are discrete L2; pressure is compared after
/// removing the mean difference. Requires at least 3 levels.
ConvergenceStudy manufactured_run(std::span<const int> levels, double anna, double kstar = 1.0);

struct LimitReport {
    double darcy_anna = 1e-8;
    double darcy_difference = 0.0;
    double stokes_anna = 1e4;
    double stokes_difference = 0.0;
};

/// Darcy limit: heterogeneous field at anna = 1e-8 against the mixed Darcy
/// system, relative L2 over interior velocity faces. Stokes limit: K* = 1 at
/// anna = 1e4 against the same system with the drag block removed, relative
/// L2 over all velocity faces. Pinned systems, direct solves.
LimitReport limit_checks(const StaggeredGrid& grid, const PermeabilityField& field, const BoundaryData& darcy_bc,
                         const BoundaryData& stokes_bc);
inline LimitReport limit_checks(const StaggeredGrid& grid, const PermeabilityField& field, const BoundaryData& bc) {
    return limit_checks(grid, field, bc, bc);
}

/// Lid-driven cavity data: u = 1 on the top wall, zero elsewhere.
BoundaryData lid_driven_boundary(const StaggeredGrid& grid);

}  // namespace brinkman
