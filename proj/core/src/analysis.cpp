#include "brinkman/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace brinkman {

double check_divergence(const StaggeredGrid& grid, std::span<const double> velocity) {
    if (velocity.size() != grid.n_velocity()) {
        throw std::invalid_argument("check_divergence: velocity size does not match grid");
    }
    const double idx = 1.0 / grid.dx();
    const double idy = 1.0 / grid.dy();
    double worst = 0.0;
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const double div = (velocity[grid.u(i + 1, j)] - velocity[grid.u(i, j)]) * idx +
                               (velocity[grid.v(i, j + 1)] - velocity[grid.v(i, j)]) * idy;
            worst = std::max(worst, std::abs(div));
        }
    }
    return worst;
}

double nullspace_residual(const MonolithicSystem& system) {
    const StaggeredGrid& g = system.grid;
    std::vector<double> e(g.n_total(), 0.0);
    std::fill(e.begin() + static_cast<long>(g.p_offset()), e.end(), 1.0);
    const std::vector<double> me = system.matrix * e;
    return norm_inf(me) / system.matrix.norm_inf();
}

KappaMode parse_kappa_mode(std::string_view name) {
    if (name == "pinned") return KappaMode::Pinned;
    if (name == "unpinned") return KappaMode::Unpinned;
    if (name == "none") return KappaMode::None;
    throw std::invalid_argument("unknown kappa mode '" + std::string(name) + "'");
}

const char* to_string(KappaMode mode) noexcept {
    switch (mode) {
        case KappaMode::Pinned: return "pinned";
        case KappaMode::Unpinned: return "unpinned";
        case KappaMode::None: return "none";
    }
    return "?";
}

bool RegimeTable::all_converged() const {
    return std::all_of(rows.begin(), rows.end(), [](const RegimeRow& r) { return r.converged; });
}

namespace {

RegimeRow sweep_point(const StaggeredGrid& grid, const NormalizedPermeability& kstar, double da,
                      const BoundaryData& bc, const SweepOptions& options) {
    RegimeRow row;
    row.da = da;
    row.anna = options.viscosity_ratio * da;
    row.regime = classify_regime(row.anna, options.thresholds);

    AssemblyOptions assembly;
    assembly.pin_pressure = options.pin_pressure;
    const MonolithicSystem sys = assemble_monolithic(grid, kstar, row.anna, bc, assembly);
    const SolveResult solved = gmres_solve(sys.matrix, sys.rhs, options.solver);
    row.iterations = solved.report.iterations;
    row.converged = solved.report.converged;
    row.final_relres = solved.report.final_relres;
    row.wall_time = solved.report.wall_time;
    const FlowFields fields = split_solution(grid, solved.x);
    const std::vector<double> velocity = fields.velocity();
    row.max_divergence = check_divergence(grid, velocity);
    row.velocity_norm = norm2(velocity);

    if (options.kappa == KappaMode::None) {
        row.kappa_flag = "none";
    } else if (grid.n_total() > kDenseSpectralLimit) {
        row.kappa_flag = "omitted";
    } else if (options.kappa == KappaMode::Pinned) {
        const MonolithicSystem pinned =
            options.pin_pressure ? sys : assemble_monolithic(grid, kstar, row.anna, bc, {true, true});
        const ConditionNumber c = condition_number(pinned.matrix);
        row.kappa = c.kappa;
        row.kappa_flag = c.numerically_singular ? "singular" : "ok";
    } else {
        const MonolithicSystem unpinned =
            options.pin_pressure ? assemble_monolithic(grid, kstar, row.anna, bc, {false, true}) : sys;
        const ConditionNumber c = condition_number(unpinned.matrix, 1);
        row.kappa = c.kappa;
        row.kappa_flag = c.numerically_singular ? "singular" : "nullspace_excluded";
    }
    return row;
}

}  // namespace

RegimeTable sweep_darcy(const StaggeredGrid& grid, const PermeabilityField& field, std::span<const double> da_values,
                        const BoundaryData& bc, const SweepOptions& options, std::string field_descriptor) {
    if (da_values.empty()) throw std::invalid_argument("sweep_darcy: da list is empty");
    for (std::size_t k = 0; k < da_values.size(); ++k) {
        if (!(da_values[k] > 0.0) || !std::isfinite(da_values[k])) {
            throw std::invalid_argument("sweep_darcy: da values must be positive and finite");
        }
        if (k > 0 && !(da_values[k] > da_values[k - 1])) {
            throw std::invalid_argument("sweep_darcy: da values must be strictly ascending");
        }
    }
    if (!(options.viscosity_ratio > 0.0)) throw std::invalid_argument("sweep_darcy: viscosity ratio must be positive");
    if (!(options.thresholds.a_low < options.thresholds.a_high)) {
        throw std::invalid_argument("sweep_darcy: regime thresholds must satisfy a_low < a_high");
    }

    const NormalizedPermeability kstar = normalize(field);
    RegimeTable table;
    table.nx = grid.nx();
    table.ny = grid.ny();
    table.field_descriptor = std::move(field_descriptor);
    table.options = options;
    table.rows.resize(da_values.size());

    const unsigned workers = std::clamp<unsigned>(options.threads, 1, static_cast<unsigned>(da_values.size()));
    if (workers == 1) {
        for (std::size_t k = 0; k < da_values.size(); ++k) table.rows[k] = sweep_point(grid, kstar, da_values[k], bc, options);
        return table;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t k = next++; k < da_values.size(); k = next++) {
                        table.rows[k] = sweep_point(grid, kstar, da_values[k], bc, options);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return table;
}

namespace {

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

}  // namespace

std::string format_regime_csv(const RegimeTable& table, bool timing) {
    std::ostringstream out;
    out << "da,anna,kappa,kappa_flag,iterations,relres,regime,wall_ms\n";
    for (const auto& r : table.rows) {
        out << sci(r.da) << ',' << sci(r.anna) << ',' << (r.kappa ? sci(*r.kappa) : std::string("nan")) << ','
            << r.kappa_flag << ',' << r.iterations << ',' << sci(r.final_relres) << ',' << to_string(r.regime) << ','
            << sci(timing ? r.wall_time * 1e3 : 0.0) << '\n';
    }
    return out.str();
}

std::string format_spectrum_csv(const Spectrum& spectrum) {
    std::ostringstream out;
    out << "re,im\n";
    for (const auto& l : spectrum.eigenvalues) out << sci(l.real()) << ',' << sci(l.imag()) << '\n';
    return out.str();
}

BoundaryData lid_driven_boundary(const StaggeredGrid& grid) {
    BoundaryData bc = uniform_boundary(grid, 0.0, 0.0);
    std::fill(bc.top_u.begin(), bc.top_u.end(), 1.0);
    return bc;
}

namespace {

double relative_l2(std::span<const double> a, std::span<const double> b, const std::vector<bool>& mask) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (!mask[k]) continue;
        num += (a[k] - b[k]) * (a[k] - b[k]);
        den += b[k] * b[k];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

LimitReport limit_checks(const StaggeredGrid& grid, const PermeabilityField& field, const BoundaryData& darcy_bc,
                         const BoundaryData& stokes_bc) {
    LimitReport rep;
    const AssemblyOptions pinned{true, true};
    const std::size_t nvel = grid.n_velocity();

    {
        const NormalizedPermeability kstar = normalize(field);
        const ForcingField f = zero_forcing(grid);
        const MonolithicSystem full = assemble_monolithic(grid, kstar, rep.darcy_anna, darcy_bc, f, pinned);
        const MonolithicSystem oracle = assemble_darcy_oracle(grid, kstar, darcy_bc, f, pinned);
        const std::vector<double> x = direct_solve(full.matrix, full.rhs);
        const std::vector<double> y = direct_solve(oracle.matrix, oracle.rhs);
        std::vector<bool> interior(nvel);
        for (std::size_t k = 0; k < nvel; ++k) interior[k] = !grid.is_boundary(k);
        rep.darcy_difference = relative_l2(std::span(x).first(nvel), std::span(y).first(nvel), interior);
    }
    {
        const NormalizedPermeability kstar = normalize(uniform_field(grid, 1.0));
        const MonolithicSystem full = assemble_monolithic(grid, kstar, rep.stokes_anna, stokes_bc, pinned);
        const MonolithicSystem oracle =
            assemble_monolithic(grid, kstar, rep.stokes_anna, stokes_bc, AssemblyOptions{true, false});
        const std::vector<double> x = direct_solve(full.matrix, full.rhs);
        const std::vector<double> y = direct_solve(oracle.matrix, oracle.rhs);
        const std::vector<bool> all(nvel, true);
        rep.stokes_difference = relative_l2(std::span(x).first(nvel), std::span(y).first(nvel), all);
    }
    return rep;
}

}  // namespace brinkman
