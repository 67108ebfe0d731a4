#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "brinkman/errors.hpp"
#include "commands.hpp"

using namespace brinkman;
using namespace brinkman::cli;

int main(int argc, char** argv) {
    CLI::App app{"Staggered-grid Stokes-Brinkman solver"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::string> pin;
    bool quiet = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
        sub->add_option("--pin-pressure", pin, "pin p_0 = 0 (true|false)");
        sub->add_flag("--quiet", quiet, "suppress progress output");
    };
    auto* solve = app.add_subcommand("solve", "single steady solve");
    auto* sweep = app.add_subcommand("sweep", "Darcy-number sweep with regime table");
    auto* verify = app.add_subcommand("verify", "built-in correctness checks");
    auto* gen = app.add_subcommand("gen-field", "write a generated permeability field");
    for (auto* sub : {solve, sweep, verify, gen}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        RunConfig config = load_config(config_path);
        if (out_dir) config.out_dir = *out_dir;
        if (pin) config.pin_pressure = parse_bool(*pin);
        const CommandOptions options{quiet, nullptr};
        if (*solve) return run_solve(config, options);
        if (*sweep) return run_sweep(config, options);
        if (*verify) return run_verify(config, options);
        return run_gen_field(config, options);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        // Invalid fields, singular drag and bad solver settings are input problems.
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}
