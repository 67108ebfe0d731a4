#include <cmath>
#include <numbers>
#include <stdexcept>

#include "brinkman/analysis.hpp"

namespace brinkman {

using std::numbers::pi;

std::pair<double, double> ManufacturedSolution::velocity(double x, double y) const {
    const double sx = std::sin(pi * x);
    const double sy = std::sin(pi * y);
    return {sx * sx * std::sin(2.0 * pi * y), -std::sin(2.0 * pi * x) * sy * sy};
}

double ManufacturedSolution::pressure(double x, double y) const { return std::cos(pi * x) * std::cos(pi * y); }

std::pair<double, double> ManufacturedSolution::forcing(double x, double y) const {
    const auto [u, v] = velocity(x, y);
    // lap u = 2 pi^2 sin(2 pi y) (2 cos(2 pi x) - 1), and symmetrically for v.
    const double lap_u = 2.0 * pi * pi * std::sin(2.0 * pi * y) * (2.0 * std::cos(2.0 * pi * x) - 1.0);
    const double lap_v = -2.0 * pi * pi * std::sin(2.0 * pi * x) * (2.0 * std::cos(2.0 * pi * y) - 1.0);
    const double dpdx = -pi * std::sin(pi * x) * std::cos(pi * y);
    const double dpdy = -pi * std::cos(pi * x) * std::sin(pi * y);
    return {-anna * lap_u + u / kstar + dpdx, -anna * lap_v + v / kstar + dpdy};
}

ConvergenceStudy manufactured_run(std::span<const int> levels, double anna, double kstar) {
    if (levels.size() < 3) throw std::invalid_argument("manufactured_run: at least 3 grid levels are required");
    const ManufacturedSolution exact{anna, kstar};
    ConvergenceStudy study;
    for (int n : levels) {
        const StaggeredGrid grid(n, n);
        const NormalizedPermeability scaled{n, n, std::vector<double>(grid.n_p(), kstar),
                                            std::vector<double>(grid.n_p(), kstar), 1.0};

        const BoundaryData bc = boundary_from_function(grid, [&](double x, double y) { return exact.velocity(x, y); });
        const ForcingField f =
            forcing_from_function(grid, [&](double x, double y) { return exact.forcing(x, y); });
        const MonolithicSystem sys = assemble_monolithic(grid, scaled, anna, bc, f, AssemblyOptions{true, true});
        const FlowFields h = split_solution(grid, direct_solve(sys.matrix, sys.rhs));

        const double area = grid.dx() * grid.dy();
        double eu = 0.0;
        for (int j = 0; j < grid.ny(); ++j) {
            for (int i = 0; i <= grid.nx(); ++i) {
                const auto [x, y] = grid.position({DofKind::UFace, i, j});
                const double d = h.u[grid.u(i, j)] - exact.velocity(x, y).first;
                eu += d * d * area;
            }
        }
        for (int j = 0; j <= grid.ny(); ++j) {
            for (int i = 0; i < grid.nx(); ++i) {
                const auto [x, y] = grid.position({DofKind::VFace, i, j});
                const double d = h.v[grid.v(i, j) - grid.v_offset()] - exact.velocity(x, y).second;
                eu += d * d * area;
            }
        }
        std::vector<double> dp(grid.n_p());
        double mean = 0.0;
        for (int j = 0; j < grid.ny(); ++j) {
            for (int i = 0; i < grid.nx(); ++i) {
                const auto [x, y] = grid.position({DofKind::Pressure, i, j});
                dp[grid.cell(i, j)] = h.p[grid.cell(i, j)] - exact.pressure(x, y);
                mean += dp[grid.cell(i, j)];
            }
        }
        mean /= static_cast<double>(dp.size());
        double ep = 0.0;
        for (double d : dp) ep += (d - mean) * (d - mean) * area;

        study.levels.push_back(n);
        study.velocity_errors.push_back(std::sqrt(eu));
        study.pressure_errors.push_back(std::sqrt(ep));
    }
    for (std::size_t k = 1; k < study.levels.size(); ++k) {
        const double ratio = static_cast<double>(study.levels[k]) / study.levels[k - 1];
        study.velocity_orders.push_back(std::log(study.velocity_errors[k - 1] / study.velocity_errors[k]) /
                                        std::log(ratio));
        study.pressure_orders.push_back(std::log(study.pressure_errors[k - 1] / study.pressure_errors[k]) /
                                        std::log(ratio));
    }
    return study;
}

}  // namespace brinkman
