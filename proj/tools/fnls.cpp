#include <CLI11.hpp>

#include <iostream>

#include "fnls/config.hpp"
#include "fnls/errors.hpp"
#include "fnls/scenarios.hpp"

int main(int argc, char** argv) {
    using namespace fnls;
    CLI::App app{"fractional NLS lab"};
    app.set_version_flag("--version", code_version());
    app.require_subcommand(1);

    std::string config_path, out_dir;
    bool quiet = false;
    const std::vector<std::pair<std::string, std::string>> verbs = {
        {"groundstate", "solve for the ground state and its thresholds"},
        {"evolve", "run the time evolution"},
        {"verify", "sampled checks of the linear and radial inequalities"},
        {"concentrate", "blowup run with concentration diagnostics"},
        {"thresholds", "threshold identity on two grids"},
    };
    for (const auto& [name, help] : verbs) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "config file (key = value)")->required();
        sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
        sub->add_flag("-q,--quiet", quiet, "no progress output");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    }
    const std::string verb = app.get_subcommands().front()->get_name();
    const Scenario s = *parse_scenario(verb);

    ScenarioConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        for (const auto& m : e.messages) std::cerr << config_path << ": " << m << "\n";
        return kExitConfig;
    }
    if (cfg.scenario && *cfg.scenario != s) {
        std::cerr << config_path << ": line " << cfg.lines.at("scenario") << ": config is for '"
                  << scenario_name(*cfg.scenario) << "', not '" << verb << "'\n";
        return kExitConfig;
    }
    const std::string dir = out_dir.empty() ? cfg.output_dir : out_dir;
    const int code = run_scenario_guarded(cfg, s, dir, std::cerr, quiet ? nullptr : &std::cout);
    if (!quiet) std::cout << "exit " << code << ", outputs in " << dir << "\n";
    return code;
}
