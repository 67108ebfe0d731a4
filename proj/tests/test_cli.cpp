#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "commands.hpp"
#include "config.hpp"

using namespace brinkman;
using namespace brinkman::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("brinkman_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

int run_exe(const std::string& args) {
    const std::string cmd = std::string(BRINKMAN_EXE) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, DefaultsAndParsing) {
    const auto c = parse_config(R"(
# comment line
grid.nx = 8   # trailing comment
grid.ny = 6
anna = 0.5
field.pattern = checkerboard
field.contrast_x = 100
bc.g = 1, 0.5
solver.tol = 1e-8
solver.preconditioner = jacobi
sweep.da = logspace:-2,2,5
)");
    EXPECT_EQ(c.nx, 8);
    EXPECT_EQ(c.ny, 6);
    EXPECT_EQ(*c.anna, 0.5);
    EXPECT_EQ(c.field.pattern, FieldPattern::Checkerboard);
    EXPECT_EQ(c.field.contrast_x, 100.0);
    EXPECT_EQ(c.field.contrast_y, 1e5);
    EXPECT_EQ(c.bc_gy, 0.5);
    EXPECT_EQ(c.solver.preconditioner, Preconditioner::Jacobi);
    ASSERT_EQ(c.da.size(), 5u);
    EXPECT_DOUBLE_EQ(c.da[0], 1e-2);
    EXPECT_DOUBLE_EQ(c.da[2], 1.0);
    EXPECT_DOUBLE_EQ(c.da[4], 1e2);
}

TEST(Config, RoundTrip) {
    RunConfig c;
    c.nx = 7;
    c.scales = ReferenceScales{2.0, 3.0, 4.0, 8.0, 1e-3};
    c.field.pattern = FieldPattern::Lognormal;
    c.field.seed = 42;
    c.bc_gx = 0.1;
    c.solver.tol = 1.0 / 3.0;
    c.solver.maxit = 77;
    c.method = SolveMethod::Direct;
    c.da = {1e-5, 0.1, 3.0 / 7.0};
    c.kappa = KappaMode::Unpinned;
    c.verify_levels = {4, 8, 16, 32};
    c.timing = true;
    EXPECT_EQ(parse_config(format_config(c)), c);

    RunConfig f;
    f.field.file = "/tmp/field.txt";
    f.anna = 2.5;
    EXPECT_EQ(parse_config(format_config(f)), f);
    EXPECT_EQ(parse_config(format_config(RunConfig{})), RunConfig{});
}

TEST(Config, ErrorsNameTheKey) {
    auto message = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message("grid.nz = 3").find("grid.nz"), std::string::npos);
    EXPECT_NE(message("solver.tol = abc").find("solver.tol"), std::string::npos);
    EXPECT_NE(message("field.pattern = stripes").find("field.pattern"), std::string::npos);
    EXPECT_NE(message("anna = 1\nscales.mu = 2").find("mutually exclusive"), std::string::npos);
    EXPECT_NE(message("field.file = x\nfield.seed = 1").find("field.file"), std::string::npos);
    EXPECT_NE(message("grid.nx = 3\ngrid.nx = 4").find("twice"), std::string::npos);
    EXPECT_NE(message("just words").find("line 1"), std::string::npos);
    EXPECT_NE(message("field.contrast_x = 0.5").find("contrast"), std::string::npos);
    EXPECT_THROW(parse_da_list("logspace:1,2"), ConfigError);
}

TEST(Config, ResolveAnna) {
    RunConfig c;
    EXPECT_THROW(resolve_anna(c), ConfigError);
    c.anna = 3.0;
    EXPECT_EQ(resolve_anna(c), 3.0);
    c.anna.reset();
    c.scales = ReferenceScales{1.0, 1.0, 1.0, 1.0, 1e-3};
    EXPECT_DOUBLE_EQ(resolve_anna(c), 1e-3);
}

TEST(Commands, SolveWritesFieldsAndReport) {
    const auto dir = scratch("solve");
    RunConfig c;
    c.nx = c.ny = 6;
    c.anna = 1.0;
    c.field.contrast_x = c.field.contrast_y = 10.0;
    c.out_dir = dir.string();
    std::ostringstream log;
    EXPECT_EQ(run_solve(c, {false, &log}), kExitOk);
    EXPECT_NE(log.str().find("converged"), std::string::npos);
    const auto u = slurp(dir / "u.txt");
    EXPECT_EQ(u.substr(0, 14), "# field u\n7 6\n");
    const auto report = slurp(dir / "report.csv");
    EXPECT_EQ(report.substr(0, report.find('\n')), "anna,regime,method,iterations,converged,relres,max_divergence,wall_ms");
    EXPECT_NE(report.find(",brinkman,gmres,"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir / "u_dim.txt"));

    c.anna.reset();
    c.scales = ReferenceScales{2.0, 3.0, 1.0, 1.0, 1.0};
    c.method = SolveMethod::Direct;
    c.pin_pressure = true;
    EXPECT_EQ(run_solve(c, {true, nullptr}), kExitOk);
    EXPECT_TRUE(fs::exists(dir / "u_dim.txt"));
    EXPECT_TRUE(fs::exists(dir / "p_dim.txt"));
}

TEST(Commands, SolveReportsNonConvergence) {
    RunConfig c;
    c.nx = c.ny = 6;
    c.anna = 1.0;
    c.solver.maxit = 2;
    c.out_dir = scratch("noconv").string();
    EXPECT_EQ(run_solve(c, {true, nullptr}), kExitNumerical);
}

TEST(Commands, SweepDeterministicAndValidated) {
    const auto dir = scratch("sweep");
    RunConfig c;
    c.nx = c.ny = 5;
    c.field.contrast_x = c.field.contrast_y = 100.0;
    c.da = {1e-2, 1.0, 1e2};
    c.out_dir = dir.string();
    ASSERT_EQ(run_sweep(c, {true, nullptr}), kExitOk);
    const auto first = slurp(dir / "regime.csv");
    ASSERT_EQ(run_sweep(c, {true, nullptr}), kExitOk);
    EXPECT_EQ(first, slurp(dir / "regime.csv"));

    c.da = {1.0, 1e-2};
    EXPECT_THROW(run_sweep(c, {true, nullptr}), ConfigError);
    c.da.clear();
    EXPECT_THROW(run_sweep(c, {true, nullptr}), ConfigError);
}

TEST(Commands, VerifyRunsSixNamedChecks) {
    RunConfig c;
    c.nx = c.ny = 8;
    c.field.contrast_x = c.field.contrast_y = 100.0;
    c.verify_levels = {8, 16, 32};
    const auto checks = verify_checks(c);
    ASSERT_EQ(checks.size(), 6u);
    const std::vector<std::string> names{"uniform_flow", "divergence", "convergence_order",
                                         "darcy_limit",  "stokes_limit", "nullspace"};
    for (std::size_t k = 0; k < names.size(); ++k) {
        EXPECT_EQ(checks[k].name, names[k]);
        EXPECT_TRUE(checks[k].passed) << checks[k].name << ": " << checks[k].detail;
    }

    c.solver.maxit = 1;
    const auto broken = verify_checks(c);
    EXPECT_FALSE(broken[1].passed);
}

TEST(Commands, GenFieldRoundTrip) {
    const auto dir = scratch("gen");
    RunConfig c;
    c.nx = 4;
    c.ny = 3;
    c.field.pattern = FieldPattern::Lognormal;
    c.field.seed = 9;
    c.out_dir = dir.string();
    ASSERT_EQ(run_gen_field(c, {true, nullptr}), kExitOk);
    const StaggeredGrid g(4, 3);
    EXPECT_EQ(load_field(dir / "field.txt", g), build_field(c, g));

    RunConfig from_file;
    from_file.nx = 4;
    from_file.ny = 3;
    from_file.field.file = (dir / "field.txt").string();
    EXPECT_EQ(build_field(from_file, g), build_field(c, g));
}

TEST(Executable, ExitCodes) {
    const auto dir = scratch("exe");
    write(dir / "ok.cfg", "grid.nx = 4\ngrid.ny = 4\nanna = 1\nfield.contrast_x = 10\nfield.contrast_y = 10\n");
    write(dir / "bad.cfg", "grid.nx = 4\nnot.a.key = 1\n");
    write(dir / "noconv.cfg", "grid.nx = 4\ngrid.ny = 4\nanna = 1\nsolver.maxit = 1\n");
    write(dir / "unsorted.cfg", "grid.nx = 4\ngrid.ny = 4\nsweep.da = 1, 0.1\n");
    const std::string out = " --out " + (dir / "out").string() + " --quiet";

    EXPECT_EQ(run_exe("solve " + (dir / "ok.cfg").string() + out), 0);
    EXPECT_TRUE(fs::exists(dir / "out" / "report.csv"));
    EXPECT_EQ(run_exe("solve " + (dir / "ok.cfg").string() + out + " --pin-pressure true"), 0);
    EXPECT_EQ(run_exe("solve " + (dir / "ok.cfg").string() + out + " --pin-pressure maybe"), 2);
    EXPECT_EQ(run_exe("solve " + (dir / "bad.cfg").string() + out), 2);
    EXPECT_EQ(run_exe("solve " + (dir / "missing.cfg").string() + out), 2);
    EXPECT_EQ(run_exe("solve " + (dir / "noconv.cfg").string() + out), 1);
    EXPECT_EQ(run_exe("sweep " + (dir / "unsorted.cfg").string() + out), 2);
    EXPECT_EQ(run_exe("gen-field " + (dir / "ok.cfg").string() + out), 0);
    EXPECT_EQ(run_exe("frobnicate"), 2);
    EXPECT_EQ(run_exe(""), 2);
}
