#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "brinkman/analysis.hpp"
#include "brinkman/media.hpp"
#include "brinkman/scaling.hpp"
#include "brinkman/solvers.hpp"

namespace brinkman::cli {

/// Bad configuration or usage. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FieldSource {
    FieldPattern pattern = FieldPattern::Layered;
    double contrast_x = 1e5;
    double contrast_y = 1e5;
    std::uint64_t seed = 0;
    int layers = 5;
    double k_min = 1.0;
    /// When set, the field is read from disk and the generator keys are unused.
    std::optional<std::string> file;

    friend bool operator==(const FieldSource&, const FieldSource&) = default;
};

enum class SolveMethod { Gmres, Direct };

/// Flat `key = value` configuration; see README for the key list.
struct RunConfig {
    int nx = 20;
    int ny = 20;
    std::optional<double> anna;
    std::optional<ReferenceScales> scales;
    FieldSource field;
    double bc_gx = 1.0;
    double bc_gy = 0.0;

    SolverConfig solver;
    SolveMethod method = SolveMethod::Gmres;
    bool pin_pressure = false;

    std::vector<double> da;
    double viscosity_ratio = 1.0;
    KappaMode kappa = KappaMode::Pinned;
    unsigned threads = 1;
    RegimeThresholds thresholds;

    std::vector<int> verify_levels{16, 32, 64};

    std::string out_dir = "out";
    /// Record wall-clock columns; off keeps reruns byte-identical.
    bool timing = false;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
/// Emits every key; parse_config(format_config(c)) == c.
std::string format_config(const RunConfig& config);

/// Explicit `a,b,c` list or `logspace:start_exp,end_exp,count`.
std::vector<double> parse_da_list(std::string_view text);
bool parse_bool(std::string_view text);

/// Anna number for the single-solve workflow: `anna`, or derived from `scales`.
double resolve_anna(const RunConfig& config);

}  // namespace brinkman::cli
