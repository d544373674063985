/*
 * Copyright 2026 The xvaengine authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "xva/errors.hpp"
#include "xva/kernels/kernels.hpp"
#include "xva/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"xvaengine - Monte Carlo valuation-adjustment engine"};
    app.require_subcommand(0, 1);

    std::string config_arg;
    std::string mode_override, out_override, kernels_choice = "auto";
    long long paths_override = -1, steps_override = -1, seed_override = -1;
    double quantile_override = -1.0;
    unsigned threads = 1;
    bool dump_paths = false, undeflated = false, gnuplot = false;

    CLI::App* run_cmd = app.add_subcommand("run", "execute a config file or a shipped preset");
    run_cmd->add_option("target,--config", config_arg, "config file path or preset name")
        ->required();
    run_cmd->add_option("--paths", paths_override, "override n_paths");
    run_cmd->add_option("--steps", steps_override, "override n_steps");
    run_cmd->add_option("--seed", seed_override, "override seed");
    run_cmd->add_option("--mode", mode_override, "override mode (value|incremental|validate-g|exposure)");
    run_cmd->add_option("--out", out_override, "override output directory");
    run_cmd->add_option("--quantile", quantile_override, "override PFE quantile level");
    run_cmd->add_option("--threads", threads, "worker threads (results are thread-count independent)");
    run_cmd->add_option("--kernels", kernels_choice, "kernel backend: auto|scalar|avx2");
    run_cmd->add_flag("--dump-paths", dump_paths, "write the simulated path lattice as CSV");
    run_cmd->add_flag("--undeflated-exposure", undeflated,
                      "emit exposure profiles without the B^r deflator");
    run_cmd->add_flag("--gnuplot", gnuplot, "space-separated gnuplot-friendly exposure files");

    CLI::App* presets_cmd = app.add_subcommand("presets", "list the shipped presets");

    CLI11_PARSE(app, argc, argv);

    if (presets_cmd->parsed()) {
        for (const auto& n : xva::preset_names()) std::cout << n << "\n";
        return 0;
    }
    if (!run_cmd->parsed()) {
        std::cout << app.help();
        return 0;
    }

    try {
        if (kernels_choice == "scalar") xva::kernels::set_backend(xva::kernels::Backend::scalar);
        else if (kernels_choice == "avx2") xva::kernels::set_backend(xva::kernels::Backend::avx2);
        else if (kernels_choice != "auto") throw xva::ConfigError("--kernels must be auto|scalar|avx2");
        xva::kernels::set_threads(threads);

        std::vector<std::string> applied_defaults;
        xva::RunConfig cfg;
        if (xva::is_preset(config_arg)) {
            cfg = xva::preset_config(config_arg);
            std::cout << "preset: " << config_arg << "\n";
        } else if (std::filesystem::exists(config_arg)) {
            cfg = xva::parse_config(config_arg, &applied_defaults);
        } else {
            throw xva::ConfigError("'" + config_arg + "' is neither a config file nor a preset (see `xvaengine presets`)");
        }
        for (const auto& d : applied_defaults) std::cout << "default applied: " << d << "\n";

        auto override_log = [](const char* name, const auto& v) {
            std::cout << "override: " << name << " = " << v << "\n";
        };
        if (paths_override > 0) { cfg.n_paths = (std::size_t)paths_override; override_log("paths", paths_override); }
        if (steps_override > 0) { cfg.n_steps = (std::size_t)steps_override; override_log("steps", steps_override); }
        if (seed_override >= 0) { cfg.seed = (std::uint64_t)seed_override; override_log("seed", seed_override); }
        if (!mode_override.empty()) { cfg.mode = xva::parse_mode(mode_override); override_log("mode", mode_override); }
        if (!out_override.empty()) { cfg.output_dir = out_override; override_log("out", out_override); }
        if (quantile_override > 0.0) { cfg.pfe_quantile = quantile_override; override_log("quantile", quantile_override); }
        if (dump_paths) cfg.dump_paths = true;
        if (undeflated) cfg.undeflated_exposure = true;
        if (gnuplot) cfg.gnuplot_exposure = true;

        std::cout << "kernels: " << xva::kernels::active().name
                  << ", threads: " << xva::kernels::threads() << "\n";
        return xva::run(cfg, std::cout);
    } catch (const xva::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const xva::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
