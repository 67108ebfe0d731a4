// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "brinkman/analysis.hpp"
#include "commands.hpp"

using namespace brinkman;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

const std::vector<double>& table_da() {
    static const std::vector<double> da = [] {
        std::vector<double> v;
        for (int e = -5; e <= 5; ++e) v.push_back(std::pow(10.0, e));
        return v;
    }();
    return da;
}

double rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        num += (a[k] - b[k]) * (a[k] - b[k]);
        den += b[k] * b[k];
    }
    return std::sqrt(num / den);
}

Outcome system_size() {
    const StaggeredGrid g(20, 20);
    const auto sys = assemble_monolithic(g, normalize(uniform_field(g)), 1.0, uniform_boundary(g, 1.0, 0.0));
    const bool ok = sys.matrix.rows() == 1240 && sys.matrix.cols() == 1240 && g.n_total() == 1240;
    return {ok, std::to_string(sys.matrix.rows()) + "x" + std::to_string(sys.matrix.cols())};
}

Outcome uniform_flow() {
    const StaggeredGrid g(20, 20);
    const auto kstar = normalize(uniform_field(g));
    const auto bc = uniform_boundary(g, 1.0, 0.0);
    double worst_err = 0.0, worst_div = 0.0;
    for (double anna : {1e-3, 1.0, 1e3}) {
        const auto sys = assemble_monolithic(g, kstar, anna, bc, AssemblyOptions{true, true});
        const auto f = split_solution(g, direct_solve(sys.matrix, sys.rhs));
        for (double u : f.u) worst_err = std::max(worst_err, std::abs(u - 1.0));
        for (double v : f.v) worst_err = std::max(worst_err, std::abs(v));
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i)
                worst_err = std::max(worst_err, std::abs(f.p[g.cell(i, j)] + i * g.dx()));
        worst_div = std::max(worst_div, check_divergence(g, f.velocity()));
    }
    return {worst_err <= 1e-10 && worst_div <= 1e-10,
            "max nodal error " + sci(worst_err) + ", max divergence " + sci(worst_div)};
}

Outcome table_trend(const PermeabilityField& field, bool verbose) {
    const StaggeredGrid g(20, 20);
    SweepOptions opts;
    opts.solver = SolverConfig{1e-6, 1240, 1240};
    opts.kappa = KappaMode::Pinned;
    const auto table = sweep_darcy(g, field, table_da(), uniform_boundary(g, 1.0, 0.0), opts);

    int inversions = 0;
    std::size_t largest = 0;
    bool kappa_monotone = true;
    std::ostringstream its, kap;
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
        const auto& r = table.rows[k];
        its << (k ? " " : "") << r.iterations;
        kap << (k ? " " : "") << (r.kappa ? sci(*r.kappa) : "nan");
        if (k == 0) continue;
        const auto& prev = table.rows[k - 1];
        if (r.iterations > prev.iterations) {
            ++inversions;
            largest = std::max(largest, r.iterations - prev.iterations);
        }
        if (!r.kappa || !prev.kappa || *r.kappa < *prev.kappa) kappa_monotone = false;
    }
    const bool a = inversions <= 2 && largest <= 5;
    const bool b = 3 * table.rows.back().iterations <= table.rows.front().iterations;
    const bool c = kappa_monotone;
    std::string detail = std::string("(a) ") + (a ? "ok" : "violated") + " [" + std::to_string(inversions) +
                         " inversions, largest +" + std::to_string(largest) + "]; (b) " + (b ? "ok" : "violated") +
                         " [" + std::to_string(table.rows.front().iterations) + " -> " +
                         std::to_string(table.rows.back().iterations) + "]; (c) " + (c ? "ok" : "violated") +
                         "; converged " + (table.all_converged() ? "all" : "NOT all");
    if (verbose) detail += "\n    iterations: " + its.str() + "\n    pinned kappa: " + kap.str();
    return {a && b && c && table.all_converged(), detail};
}

Outcome nullspace() {
    double worst = 0.0;
    for (int n : {4, 8, 20}) {
        const StaggeredGrid g(n, n);
        const auto field = generate_contrast_field(g, 1e5, 1e5, FieldPattern::Layered, 0);
        for (double anna : {1e-5, 1.0, 1e5}) {
            const auto sys = assemble_monolithic(g, normalize(field), anna, uniform_boundary(g, 1.0, 0.0));
            worst = std::max(worst, nullspace_residual(sys));
        }
    }
    return {worst <= 1e-14, "max ||M e_p||_inf / ||M||_inf = " + sci(worst)};
}

Outcome convergence_order() {
    const std::vector<int> levels{16, 32, 64};
    const auto s = manufactured_run(levels, 1.0);
    bool ok = true;
    for (double o : s.velocity_orders) ok = ok && o >= 1.7 && o <= 2.3;
    return {ok, "velocity L2 errors " + sci(s.velocity_errors[0]) + " " + sci(s.velocity_errors[1]) + " " +
                    sci(s.velocity_errors[2]) + ", orders " + sci(s.velocity_orders[0]) + " " +
                    sci(s.velocity_orders[1])};
}

Outcome limits() {
    const StaggeredGrid g(16, 16);
    const auto field = generate_contrast_field(g, 1e5, 1e5, FieldPattern::Layered, 0);
    const auto r = limit_checks(g, field, uniform_boundary(g, 1.0, 0.0), lid_driven_boundary(g));
    return {r.darcy_difference <= 1e-3 && r.stokes_difference <= 1e-3,
            "darcy " + sci(r.darcy_difference) + ", stokes " + sci(r.stokes_difference)};
}

Outcome solver_oracle() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> size(5, 200);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::bernoulli_distribution keep(0.1);
    double worst = 0.0;
    bool monotone = true, converged = true;

    auto check = [&](const SparseMatrix& a, const std::vector<double>& b) {
        const auto g = gmres_solve(a, b, SolverConfig{1e-6});
        const auto d = direct_solve(a, b);
        converged = converged && g.report.converged;
        worst = std::max(worst, rel_diff(g.x, d));
        const auto& h = g.report.residual_history;
        for (std::size_t k = 1; k < h.size(); ++k) monotone = monotone && h[k] <= h[k - 1] * (1.0 + 1e-12);
    };

    for (int t = 0; t < 25; ++t) {
        const std::size_t n = size(rng);
        std::vector<Triplet> trips;
        for (std::size_t r = 0; r < n; ++r) {
            double off = 0.0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == r || !keep(rng)) continue;
                const double v = u(rng);
                off += std::abs(v);
                trips.push_back({r, c, v});
            }
            trips.push_back({r, r, off + 0.5 + std::abs(u(rng))});
        }
        std::vector<double> b(n);
        for (auto& x : b) x = u(rng);
        check(SparseMatrix::from_triplets(n, n, std::move(trips)), b);
    }
    for (double anna : {1e-2, 1.0, 1e2}) {
        const StaggeredGrid g(8, 8);
        const auto field = generate_contrast_field(g, 1e3, 1e3, FieldPattern::Layered, 0);
        const auto sys = assemble_monolithic(g, normalize(field), anna, uniform_boundary(g, 1.0, 0.0),
                                             AssemblyOptions{true, true});
        check(sys.matrix, sys.rhs);
    }
    return {worst <= 1e-4 && monotone && converged, "max relative difference " + sci(worst) + ", history " +
                                                        (monotone ? "monotone" : "NOT monotone")};
}

Outcome spectrum_trend() {
    const StaggeredGrid g(8, 8);
    const auto kstar = normalize(generate_contrast_field(g, 1e5, 1e5, FieldPattern::Layered, 0));
    const auto bc = uniform_boundary(g, 1.0, 0.0);
    auto smallest = [&](double da) {
        const auto sys = assemble_monolithic(g, kstar, da, bc, AssemblyOptions{true, true});
        return eigen_spectrum(sys.matrix).min_nonzero_abs;
    };
    const double lo = smallest(1e-2), hi = smallest(1e2);
    return {hi > lo, "min |lambda| " + sci(lo) + " (Da=1e-2) vs " + sci(hi) + " (Da=1e2)"};
}

Outcome determinism() {
    const fs::path root = fs::temp_directory_path() / "brinkman_acceptance_determinism";
    fs::remove_all(root);
    cli::RunConfig c;
    c.nx = c.ny = 20;
    c.field.pattern = FieldPattern::Lognormal;
    c.field.seed = 7;
    c.da = table_da();
    c.kappa = KappaMode::Pinned;
    std::vector<std::string> outputs;
    for (int run = 0; run < 2; ++run) {
        c.out_dir = (root / ("run" + std::to_string(run))).string();
        cli::run_sweep(c, {true, nullptr});
        std::ifstream in(fs::path(c.out_dir) / "regime.csv", std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        outputs.push_back(s.str());
    }
    const bool ok = !outputs[0].empty() && outputs[0] == outputs[1];
    return {ok, std::to_string(outputs[0].size()) + " bytes, " + (ok ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const StaggeredGrid g20(20, 20);
    const std::vector<Criterion> criteria{
        {1, "system size 20x20 -> 1240", system_size},
        {2, "uniform-flow exactness", uniform_flow},
        {3, "iteration/kappa trend, layered 1e5 field",
         [&] { return table_trend(generate_contrast_field(g20, 1e5, 1e5, FieldPattern::Layered, 0), true); }},
        {4, "pressure nullspace", nullspace},
        {5, "manufactured convergence order", convergence_order},
        {6, "Darcy and Stokes limits", limits},
        {7, "GMRES vs direct oracle", solver_oracle},
        {8, "spectrum moves away from origin", spectrum_trend},
        {9, "sweep determinism", determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.passed) ++failures;
        std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.passed ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
    }

    // Same trend study on a seeded lognormal field, reported for context only.
    const auto extra = table_trend(generate_contrast_field(g20, 1e5, 1e5, FieldPattern::Lognormal, 1), true);
    std::printf("INFO supplementary trend, lognormal 1e5 field (seed 1), not a criterion: %s\n", extra.detail.c_str());

    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
