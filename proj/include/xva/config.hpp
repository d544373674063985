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
#ifndef XVA_CONFIG_HPP
#define XVA_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "xva/portfolio.hpp"

namespace xva {

enum class RunMode { value, incremental, validate_g, exposure };

std::string to_string(RunMode m);
RunMode parse_mode(const std::string& s);

struct RunConfig {
    RateEnvironment env;
    std::vector<AssetSpec> assets;
    PortfolioDef portfolio;
    SolverConfig solver;
    std::size_t n_paths = 100000;
    std::size_t n_steps = 100;
    std::uint64_t seed = 42;
    double horizon = 1.0;
    RunMode mode = RunMode::value;
    std::string output_dir = "out";
    double pfe_quantile = 0.95;
    bool undeflated_exposure = false;
    bool gnuplot_exposure = false;
    bool dump_paths = false;
    std::optional<CandidatePlacement> candidate;

    void validate() const;
};

/// Strict parse: unknown fields are rejected by name and location, cross
/// references must resolve, defaults are recorded in `applied_defaults`.
RunConfig parse_config_text(const std::string& json_text, std::vector<std::string>* applied_defaults = nullptr);
RunConfig parse_config(const std::string& path, std::vector<std::string>* applied_defaults = nullptr);

/// Canonical serialization; parse(serialize(cfg)) == cfg field-for-field.
std::string serialize_config(const RunConfig& cfg);

/// Shipped presets (embedded, no external files needed).
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
RunConfig preset_config(const std::string& name);

} // namespace xva

#endif
