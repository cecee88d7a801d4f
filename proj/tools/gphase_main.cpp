#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gphase/kernels.hpp"
#include "gphase/scenario.hpp"

namespace {

int cmd_scenarios() {
    const auto& desc = gphase::scenario_descriptions();
    for (const std::string& name : gphase::builtin_scenarios())
        std::printf("%-18s %s\n", name.c_str(), desc.at(name).c_str());
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, bool degrees) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot open config file '" << config_path << "'\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    gphase::ScenarioConfig cfg;
    try {
        cfg = gphase::parse_config(buf.str());
        if (degrees) gphase::degrees_to_radians(cfg);
    } catch (const gphase::ConfigError& e) {
        std::cerr << config_path << ": " << e.what() << "\n";
        return 2;
    }

    try {
        const gphase::PhaseReport rep = gphase::run_scenario(cfg, out_dir);
        std::cout << rep.to_text();
        return 0;
    } catch (const gphase::ConfigError& e) {
        std::cerr << config_path << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometric-phase laboratory: mixed-state trace phases, spin holonomy, "
                 "solid angles, and fringe readout"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("scenarios", "list the built-in scenarios");

    std::string config_path;
    std::string out_dir = ".";
    bool degrees = false;
    auto* run = app.add_subcommand("run", "run a scenario from a config file");
    run->add_option("--config", config_path, "path to the scenario config")->required();
    run->add_option("--out", out_dir, "directory for the report and any CSV artifacts");
    run->add_flag("--degrees", degrees, "interpret config angles as degrees");

    std::string backend;
    app.add_option("--kernels", backend, "force a kernel backend (scalar|avx2)");

    CLI11_PARSE(app, argc, argv);

    if (!backend.empty()) {
        try {
            gphase::kernels::force(backend == "scalar" ? gphase::kernels::Backend::scalar
                                                       : gphase::kernels::Backend::avx2);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    if (list->parsed()) return cmd_scenarios();
    return cmd_run(config_path, out_dir, degrees);
}
