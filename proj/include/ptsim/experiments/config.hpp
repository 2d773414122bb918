// Copyright 2026 The ptsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PTSIM_EXPERIMENTS_CONFIG_HPP
#define PTSIM_EXPERIMENTS_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ptsim/noise/params.hpp"

namespace ptsim::experiments {

enum class Scenario { ENTANGLEMENT, TELEPORT, VISIBILITY_SCAN, CALIBRATE };

std::string_view scenario_name(Scenario s);
Scenario parse_scenario(std::string_view s);

struct ExperimentConfig {
    // [scenario]
    Scenario scenario = Scenario::ENTANGLEMENT;
    std::filesystem::path circuit_file;
    std::vector<std::string> input_states{"H", "V", "+", "-", "L", "R"};
    std::string bell_outcome = "phi+";
    double integration_time = 1.0;  // seconds per setting
    std::filesystem::path output_dir = "out";
    bool shot_noise = true;
    double scan_step_deg = 10.0;
    std::string scan_anti_stokes = "-";
    double scan_qwp3 = 45.0;
    long bell_trials = 100000;

    // [noise]
    noise::NoiseParams noise;

    // [analysis]
    int bootstrap_n = 500;
    bool subtract_background = true;
    bool minimal_grid = false;
    double target_fe = 0.81;
    double target_vis = 0.746;
    std::vector<std::string> calibrate_free{"sbr", "eta_read"};
    int max_iterations = 200;

    std::uint64_t config_hash = 0;  // FNV-1a of the source text

    /// Throws ConfigError on inconsistent values.
    void validate() const;
};

/// Relative paths resolve against `base_dir`. Unknown sections or keys are rejected.
ExperimentConfig parse_config(std::string_view toml_text, const std::filesystem::path &base_dir,
                              std::string_view source_name = "config");
ExperimentConfig load_config(const std::filesystem::path &path);

/// Replaces cfg.noise with the [noise] section of another config file.
void apply_noise_file(ExperimentConfig &cfg, const std::filesystem::path &path);

/// Canonical TOML text; parse_config(to_toml(c)) reproduces c.
std::string to_toml(const ExperimentConfig &cfg);
std::string noise_toml(const noise::NoiseParams &p);

}  // namespace ptsim::experiments

#endif
