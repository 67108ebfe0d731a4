#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "brinkman/errors.hpp"
#include "brinkman/io.hpp"

namespace brinkman::cli {

namespace {

namespace fs = std::filesystem;

std::ostream& sink(const CommandOptions& o) { return o.out ? *o.out : std::cout; }

std::string sci(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.5e", x);
    return buf;
}

fs::path prepare_out(const RunConfig& config) {
    const fs::path dir = config.out_dir;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + config.out_dir + "': " + ec.message());
    return dir;
}

StaggeredGrid config_grid(const RunConfig& config) { return StaggeredGrid(config.nx, config.ny); }

}  // namespace

std::string format_grid_values(const std::string& name, int cols, int rows, const std::vector<double>& values) {
    std::ostringstream out;
    out.precision(17);
    out << "# field " << name << '\n' << cols << ' ' << rows << '\n';
    for (double v : values) out << v << '\n';
    return out.str();
}

PermeabilityField build_field(const RunConfig& config, const StaggeredGrid& grid) {
    if (config.field.file) return load_field(*config.field.file, grid);
    const ContrastFieldOptions opts{config.field.k_min, config.field.layers};
    return generate_contrast_field(grid, config.field.contrast_x, config.field.contrast_y, config.field.pattern,
                                   config.field.seed, opts);
}

int run_solve(const RunConfig& config, const CommandOptions& options) {
    const double anna = resolve_anna(config);
    const StaggeredGrid grid = config_grid(config);
    const auto kstar = normalize(build_field(config, grid));
    const auto bc = uniform_boundary(grid, config.bc_gx, config.bc_gy);
    const auto system = assemble_monolithic(grid, kstar, anna, bc, AssemblyOptions{config.pin_pressure, true});
    for (const auto& w : system.warnings) std::cerr << "warning: " << w << '\n';

    SolveReport report;
    std::vector<double> x;
    if (config.method == SolveMethod::Direct) {
        const auto t0 = std::chrono::steady_clock::now();
        x = direct_solve(system.matrix, system.rhs);
        report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.final_relres = relative_residual(system.matrix, x, system.rhs);
        report.converged = std::isfinite(report.final_relres) && report.final_relres <= config.solver.tol;
    } else {
        auto result = gmres_solve(system.matrix, system.rhs, config.solver);
        x = std::move(result.x);
        report = std::move(result.report);
    }

    const auto fields = split_solution(grid, x);
    const double div = check_divergence(grid, fields.velocity());
    const Regime regime = classify_regime(anna, config.thresholds);

    const fs::path dir = prepare_out(config);
    write_file_atomic(dir / "u.txt", format_grid_values("u", grid.nx() + 1, grid.ny(), fields.u));
    write_file_atomic(dir / "v.txt", format_grid_values("v", grid.nx(), grid.ny() + 1, fields.v));
    write_file_atomic(dir / "p.txt", format_grid_values("p", grid.nx(), grid.ny(), fields.p));
    if (config.scales) {
        const auto phys = redimensionalize(fields.velocity(), fields.p, *config.scales, grid.n_velocity(), grid.n_p());
        const std::vector<double> u_dim(phys.u.begin(), phys.u.begin() + static_cast<std::ptrdiff_t>(grid.n_u()));
        const std::vector<double> v_dim(phys.u.begin() + static_cast<std::ptrdiff_t>(grid.n_u()), phys.u.end());
        write_file_atomic(dir / "u_dim.txt", format_grid_values("u_dim", grid.nx() + 1, grid.ny(), u_dim));
        write_file_atomic(dir / "v_dim.txt", format_grid_values("v_dim", grid.nx(), grid.ny() + 1, v_dim));
        write_file_atomic(dir / "p_dim.txt", format_grid_values("p_dim", grid.nx(), grid.ny(), phys.p));
    }

    std::ostringstream csv;
    csv << "anna,regime,method,iterations,converged,relres,max_divergence,wall_ms\n"
        << sci(anna) << ',' << to_string(regime) << ',' << (config.method == SolveMethod::Direct ? "direct" : "gmres")
        << ',' << report.iterations << ',' << (report.converged ? "true" : "false") << ','
        << sci(report.final_relres) << ',' << sci(div) << ',' << sci(config.timing ? report.wall_time * 1e3 : 0.0)
        << '\n';
    write_file_atomic(dir / "report.csv", csv.str());

    if (!options.quiet) {
        sink(options) << "anna=" << sci(anna) << " regime=" << to_string(regime) << " iterations=" << report.iterations
                      << " relres=" << sci(report.final_relres) << (report.converged ? " converged" : " NOT converged")
                      << '\n';
    }
    return report.converged ? kExitOk : kExitNumerical;
}

int run_sweep(const RunConfig& config, const CommandOptions& options) {
    if (config.da.empty()) throw ConfigError("config key 'sweep.da' is required for sweep");
    for (std::size_t k = 0; k < config.da.size(); ++k) {
        if (!(config.da[k] > 0.0)) throw ConfigError("config key 'sweep.da': values must be positive");
        if (k > 0 && !(config.da[k] > config.da[k - 1])) {
            throw ConfigError("config key 'sweep.da': values must be strictly ascending");
        }
    }
    const StaggeredGrid grid = config_grid(config);
    const auto field = build_field(config, grid);
    const auto bc = uniform_boundary(grid, config.bc_gx, config.bc_gy);

    SweepOptions sweep;
    sweep.viscosity_ratio = config.viscosity_ratio;
    sweep.solver = config.solver;
    sweep.pin_pressure = config.pin_pressure;
    sweep.kappa = config.kappa;
    sweep.thresholds = config.thresholds;
    sweep.threads = config.threads;

    const std::string descriptor =
        config.field.file ? "file:" + *config.field.file
                          : std::string(to_string(config.field.pattern)) + ":cx=" + sci(config.field.contrast_x) +
                                ":cy=" + sci(config.field.contrast_y) + ":seed=" + std::to_string(config.field.seed);
    const auto table = sweep_darcy(grid, field, config.da, bc, sweep, descriptor);

    const fs::path dir = prepare_out(config);
    write_file_atomic(dir / "regime.csv", format_regime_csv(table, config.timing));

    if (!options.quiet) {
        auto& out = sink(options);
        for (const auto& row : table.rows) {
            out << "da=" << sci(row.da) << " iterations=" << row.iterations << " relres=" << sci(row.final_relres)
                << " kappa=" << (row.kappa ? sci(*row.kappa) : std::string("nan")) << " (" << row.kappa_flag << ") "
                << to_string(row.regime) << (row.converged ? "" : " NOT converged") << '\n';
        }
    }
    return table.all_converged() ? kExitOk : kExitNumerical;
}

std::vector<VerifyCheck> verify_checks(const RunConfig& config) {
    std::vector<VerifyCheck> checks;
    const StaggeredGrid grid = config_grid(config);
    const double anna = config.anna ? *config.anna : config.scales ? dimensionless_groups(*config.scales).anna : 1.0;

    {
        VerifyCheck c{"uniform_flow", true, 0.0, 1e-10, {}};
        const auto kstar = normalize(uniform_field(grid));
        const auto bc = uniform_boundary(grid, config.bc_gx, config.bc_gy);
        for (double a : {1e-3, 1.0, 1e3}) {
            const auto sys = assemble_monolithic(grid, kstar, a, bc, AssemblyOptions{true, true});
            const auto fields = split_solution(grid, direct_solve(sys.matrix, sys.rhs));
            double err = 0.0;
            for (double u : fields.u) err = std::max(err, std::abs(u - config.bc_gx));
            for (double v : fields.v) err = std::max(err, std::abs(v - config.bc_gy));
            // Unit drag balances grad p = -g; the pin fixes p = 0 in cell (0, 0).
            for (int j = 0; j < grid.ny(); ++j) {
                for (int i = 0; i < grid.nx(); ++i) {
                    const double exact = -(config.bc_gx * i * grid.dx() + config.bc_gy * j * grid.dy());
                    err = std::max(err, std::abs(fields.p[grid.cell(i, j)] - exact));
                }
            }
            c.value = std::max(c.value, err / std::max(1.0, a));
        }
        c.passed = c.value <= c.threshold;
        c.detail = "max nodal error / max(1, anna) over anna in {1e-3, 1, 1e3}";
        checks.push_back(c);
    }

    const auto field = build_field(config, grid);
    const auto kstar = normalize(field);
    const auto bc = uniform_boundary(grid, config.bc_gx, config.bc_gy);

    {
        VerifyCheck c{"divergence", false, 0.0, 1e-10, {}};
        const auto pinned = assemble_monolithic(grid, kstar, anna, bc, AssemblyOptions{true, true});
        const auto direct = split_solution(grid, direct_solve(pinned.matrix, pinned.rhs));
        const double direct_div = check_divergence(grid, direct.velocity());

        const auto sys = assemble_monolithic(grid, kstar, anna, bc, AssemblyOptions{config.pin_pressure, true});
        const auto result = gmres_solve(sys.matrix, sys.rhs, config.solver);
        const double gmres_div = check_divergence(grid, split_solution(grid, result.x).velocity());
        // The continuity rows are rows of M, so |D u| cannot exceed the residual norm.
        const double bound = result.report.final_relres * norm2(sys.rhs);
        c.value = direct_div;
        c.passed = direct_div <= c.threshold && result.report.converged && gmres_div <= bound * (1.0 + 1e-12);
        c.detail = "direct " + sci(direct_div) + ", gmres " + sci(gmres_div) + " (bound " + sci(bound) + ", " +
                   (result.report.converged ? "converged" : "not converged") + ")";
        checks.push_back(c);
    }

    {
        VerifyCheck c{"convergence_order", false, 0.0, 1.7, {}};
        const auto study = manufactured_run(config.verify_levels, 1.0);
        bool decreasing = true;
        for (std::size_t k = 1; k < study.velocity_errors.size(); ++k) {
            decreasing = decreasing && study.velocity_errors[k] < study.velocity_errors[k - 1];
        }
        c.value = *std::min_element(study.velocity_orders.begin(), study.velocity_orders.end());
        const double hi = *std::max_element(study.velocity_orders.begin(), study.velocity_orders.end());
        c.passed = decreasing && c.value >= 1.7 && hi <= 2.3;
        c.detail = "velocity orders in [" + sci(c.value) + ", " + sci(hi) + "], required [1.7, 2.3]";
        checks.push_back(c);
    }

    const auto limits = limit_checks(grid, field, bc, lid_driven_boundary(grid));
    checks.push_back({"darcy_limit", limits.darcy_difference <= 1e-3, limits.darcy_difference, 1e-3,
                      "relative L2 vs mixed Darcy at anna = " + sci(limits.darcy_anna)});
    checks.push_back({"stokes_limit", limits.stokes_difference <= 1e-3, limits.stokes_difference, 1e-3,
                      "relative L2 vs drag-free system at anna = " + sci(limits.stokes_anna)});

    {
        const auto sys = assemble_monolithic(grid, kstar, anna, bc, AssemblyOptions{false, true});
        const double r = nullspace_residual(sys);
        checks.push_back({"nullspace", r <= 1e-14, r, 1e-14, "||M (0, 1)||_inf / ||M||_inf, unpinned"});
    }
    return checks;
}

int run_verify(const RunConfig& config, const CommandOptions& options) {
    const auto checks = verify_checks(config);
    std::ostringstream csv;
    csv << "check,status,value,threshold\n";
    bool ok = true;
    for (const auto& c : checks) {
        ok = ok && c.passed;
        csv << c.name << ',' << (c.passed ? "PASS" : "FAIL") << ',' << sci(c.value) << ',' << sci(c.threshold) << '\n';
        if (!options.quiet) {
            sink(options) << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << sci(c.value) << " (" << c.detail
                          << ")\n";
        }
    }
    write_file_atomic(prepare_out(config) / "verify.csv", csv.str());
    return ok ? kExitOk : kExitNumerical;
}

int run_gen_field(const RunConfig& config, const CommandOptions& options) {
    const StaggeredGrid grid = config_grid(config);
    const auto field = build_field(config, grid);
    const fs::path path = prepare_out(config) / "field.txt";
    write_field(path, field);
    if (!options.quiet) {
        sink(options) << "wrote " << path.string() << " (contrast " << sci(field.contrast_x()) << ", "
                      << sci(field.contrast_y()) << ")\n";
    }
    return kExitOk;
}

}  // namespace brinkman::cli
