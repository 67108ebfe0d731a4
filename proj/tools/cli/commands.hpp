#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace brinkman::cli {

struct CommandOptions {
    bool quiet = false;
    std::ostream* out = nullptr;  // defaults to std::cout
};

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

struct VerifyCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

PermeabilityField build_field(const RunConfig& config, const StaggeredGrid& grid);

int run_solve(const RunConfig& config, const CommandOptions& options = {});
int run_sweep(const RunConfig& config, const CommandOptions& options = {});
int run_verify(const RunConfig& config, const CommandOptions& options = {});
int run_gen_field(const RunConfig& config, const CommandOptions& options = {});

/// The six named checks, in fixed order.
std::vector<VerifyCheck> verify_checks(const RunConfig& config);

/// `# field <name>` header, `cols rows`, then one value per line (row-major, j outer).
std::string format_grid_values(const std::string& name, int cols, int rows, const std::vector<double>& values);

}  // namespace brinkman::cli
