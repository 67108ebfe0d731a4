#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace brinkman::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double to_double(std::string_view key, std::string_view v) {
    const std::string s(v);
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(x)) {
        throw ConfigError("config key '" + std::string(key) + "': '" + s + "' is not a finite number");
    }
    return x;
}

long long to_integer(std::string_view key, std::string_view v) {
    long long x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("config key '" + std::string(key) + "': '" + std::string(v) + "' is not an integer");
    }
    return x;
}

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

bool parse_bool(std::string_view text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ConfigError("'" + std::string(text) + "' is not a boolean");
}

std::vector<double> parse_da_list(std::string_view text) {
    text = trim(text);
    std::vector<double> out;
    constexpr std::string_view prefix = "logspace:";
    if (text.starts_with(prefix)) {
        const auto parts = split(text.substr(prefix.size()), ',');
        if (parts.size() != 3) throw ConfigError("sweep.da: logspace needs start_exp,end_exp,count");
        const double a = to_double("sweep.da", parts[0]);
        const double b = to_double("sweep.da", parts[1]);
        const long long count = to_integer("sweep.da", parts[2]);
        if (count < 1) throw ConfigError("sweep.da: logspace count must be >= 1");
        for (long long k = 0; k < count; ++k) {
            const double e = count == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1);
            out.push_back(std::pow(10.0, e));
        }
        return out;
    }
    for (auto part : split(text, ',')) {
        if (!part.empty()) out.push_back(to_double("sweep.da", part));
    }
    if (out.empty()) throw ConfigError("sweep.da: empty list");
    return out;
}

RunConfig parse_config(std::string_view text) {
    RunConfig c;
    std::set<std::string> seen;
    ReferenceScales scales;
    bool any_scale = false;
    bool any_generator = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) throw ConfigError("config key '" + key + "' given twice");

        auto positive = [&](double x) {
            if (!(x > 0.0)) throw ConfigError("config key '" + key + "' must be positive");
            return x;
        };
        try {
            if (key == "grid.nx") c.nx = static_cast<int>(to_integer(key, value));
            else if (key == "grid.ny") c.ny = static_cast<int>(to_integer(key, value));
            else if (key == "anna") c.anna = positive(to_double(key, value));
            else if (key == "scales.l_ref") { scales.l_ref = positive(to_double(key, value)); any_scale = true; }
            else if (key == "scales.u_ref") { scales.u_ref = positive(to_double(key, value)); any_scale = true; }
            else if (key == "scales.mu") { scales.mu = positive(to_double(key, value)); any_scale = true; }
            else if (key == "scales.mu_eff") { scales.mu_eff = positive(to_double(key, value)); any_scale = true; }
            else if (key == "scales.k_max") { scales.k_max = positive(to_double(key, value)); any_scale = true; }
            else if (key == "field.file") c.field.file = std::string(value);
            else if (key == "field.pattern") { c.field.pattern = parse_field_pattern(value); any_generator = true; }
            else if (key == "field.contrast_x") { c.field.contrast_x = to_double(key, value); any_generator = true; }
            else if (key == "field.contrast_y") { c.field.contrast_y = to_double(key, value); any_generator = true; }
            else if (key == "field.seed") { c.field.seed = static_cast<std::uint64_t>(to_integer(key, value)); any_generator = true; }
            else if (key == "field.layers") { c.field.layers = static_cast<int>(to_integer(key, value)); any_generator = true; }
            else if (key == "field.k_min") { c.field.k_min = positive(to_double(key, value)); any_generator = true; }
            else if (key == "bc.g") {
                const auto parts = split(value, ',');
                if (parts.size() != 2) throw ConfigError("config key 'bc.g' expects 'gx, gy'");
                c.bc_gx = to_double(key, parts[0]);
                c.bc_gy = to_double(key, parts[1]);
            }
            else if (key == "solver.tol") c.solver.tol = positive(to_double(key, value));
            else if (key == "solver.maxit") c.solver.maxit = static_cast<std::size_t>(std::max(0LL, to_integer(key, value)));
            else if (key == "solver.restart") c.solver.restart = static_cast<std::size_t>(std::max(0LL, to_integer(key, value)));
            else if (key == "solver.preconditioner") c.solver.preconditioner = parse_preconditioner(value);
            else if (key == "solver.reorthogonalize") c.solver.reorthogonalize = parse_bool(value);
            else if (key == "solver.method") {
                if (value == "gmres") c.method = SolveMethod::Gmres;
                else if (value == "direct") c.method = SolveMethod::Direct;
                else throw ConfigError("config key 'solver.method' must be gmres or direct");
            }
            else if (key == "solver.pin_pressure") c.pin_pressure = parse_bool(value);
            else if (key == "sweep.da") c.da = parse_da_list(value);
            else if (key == "sweep.viscosity_ratio") c.viscosity_ratio = positive(to_double(key, value));
            else if (key == "sweep.kappa") c.kappa = parse_kappa_mode(value);
            else if (key == "sweep.threads") c.threads = static_cast<unsigned>(std::max(1LL, to_integer(key, value)));
            else if (key == "regime.a_low") c.thresholds.a_low = positive(to_double(key, value));
            else if (key == "regime.a_high") c.thresholds.a_high = positive(to_double(key, value));
            else if (key == "verify.levels") {
                c.verify_levels.clear();
                for (auto part : split(value, ',')) c.verify_levels.push_back(static_cast<int>(to_integer(key, part)));
            }
            else if (key == "output.dir") c.out_dir = std::string(value);
            else if (key == "output.timing") c.timing = parse_bool(value);
            else throw ConfigError("unknown config key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("config key '" + key + "': " + e.what());
        }
    }

    if (any_scale) c.scales = scales;
    if (c.anna && c.scales) throw ConfigError("config keys 'anna' and 'scales.*' are mutually exclusive");
    if (c.field.file && any_generator) {
        throw ConfigError("config key 'field.file' conflicts with the field generator keys");
    }
    if (c.nx < 1 || c.ny < 1) throw ConfigError("config keys 'grid.nx'/'grid.ny' must be >= 1");
    if (c.field.contrast_x < 1.0 || c.field.contrast_y < 1.0) {
        throw ConfigError("config keys 'field.contrast_x'/'field.contrast_y' must be >= 1");
    }
    if (!(c.thresholds.a_low < c.thresholds.a_high)) {
        throw ConfigError("config keys 'regime.a_low' must be below 'regime.a_high'");
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_config(const RunConfig& c) {
    std::ostringstream out;
    out << "grid.nx = " << c.nx << '\n' << "grid.ny = " << c.ny << '\n';
    if (c.anna) out << "anna = " << num(*c.anna) << '\n';
    if (c.scales) {
        out << "scales.l_ref = " << num(c.scales->l_ref) << '\n'
            << "scales.u_ref = " << num(c.scales->u_ref) << '\n'
            << "scales.mu = " << num(c.scales->mu) << '\n'
            << "scales.mu_eff = " << num(c.scales->mu_eff) << '\n'
            << "scales.k_max = " << num(c.scales->k_max) << '\n';
    }
    if (c.field.file) {
        out << "field.file = " << *c.field.file << '\n';
    } else {
        out << "field.pattern = " << to_string(c.field.pattern) << '\n'
            << "field.contrast_x = " << num(c.field.contrast_x) << '\n'
            << "field.contrast_y = " << num(c.field.contrast_y) << '\n'
            << "field.seed = " << c.field.seed << '\n'
            << "field.layers = " << c.field.layers << '\n'
            << "field.k_min = " << num(c.field.k_min) << '\n';
    }
    out << "bc.g = " << num(c.bc_gx) << ", " << num(c.bc_gy) << '\n'
        << "solver.tol = " << num(c.solver.tol) << '\n'
        << "solver.maxit = " << c.solver.maxit << '\n'
        << "solver.restart = " << c.solver.restart << '\n'
        << "solver.preconditioner = " << to_string(c.solver.preconditioner) << '\n'
        << "solver.reorthogonalize = " << (c.solver.reorthogonalize ? "true" : "false") << '\n'
        << "solver.method = " << (c.method == SolveMethod::Direct ? "direct" : "gmres") << '\n'
        << "solver.pin_pressure = " << (c.pin_pressure ? "true" : "false") << '\n';
    if (!c.da.empty()) {
        out << "sweep.da = ";
        for (std::size_t k = 0; k < c.da.size(); ++k) out << (k ? ", " : "") << num(c.da[k]);
        out << '\n';
    }
    out << "sweep.viscosity_ratio = " << num(c.viscosity_ratio) << '\n'
        << "sweep.kappa = " << to_string(c.kappa) << '\n'
        << "sweep.threads = " << c.threads << '\n'
        << "regime.a_low = " << num(c.thresholds.a_low) << '\n'
        << "regime.a_high = " << num(c.thresholds.a_high) << '\n'
        << "verify.levels = ";
    for (std::size_t k = 0; k < c.verify_levels.size(); ++k) out << (k ? ", " : "") << c.verify_levels[k];
    out << '\n' << "output.dir = " << c.out_dir << '\n' << "output.timing = " << (c.timing ? "true" : "false") << '\n';
    return out.str();
}

double resolve_anna(const RunConfig& config) {
    if (config.anna && config.scales) throw ConfigError("config keys 'anna' and 'scales.*' are mutually exclusive");
    if (config.anna) return *config.anna;
    if (config.scales) return dimensionless_groups(*config.scales).anna;
    throw ConfigError("config must set exactly one of 'anna' or 'scales.*'");
}

}  // namespace brinkman::cli
