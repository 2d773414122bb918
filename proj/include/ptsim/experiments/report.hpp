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

#ifndef PTSIM_EXPERIMENTS_REPORT_HPP
#define PTSIM_EXPERIMENTS_REPORT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "ptsim/experiments/scenarios.hpp"
#include "ptsim/tomo/json.hpp"

namespace ptsim::experiments {

using tomo::Json;

std::string tool_version();
std::string hex64(std::uint64_t v);

Json provenance_json(const ExperimentConfig &cfg);
Json noise_json(const noise::NoiseParams &p);
Json counts_json(const std::vector<CountRecord> &counts);
/// {"value": v, "sigma": bootstrap stddev} for every nominal scalar.
Json scalars_json(const tomo::BootstrapResult &b);

Json entanglement_report(const ExperimentConfig &cfg, const EntanglementRun &run);
Json scan_report(const ExperimentConfig &cfg, const EntanglementRun &run);
Json teleport_report(const ExperimentConfig &cfg, const TeleportRun &run);
Json calibration_report(const ExperimentConfig &cfg, const CalibrationResult &r);

/// <dir>/<scenario>_report.json and, when counts are given, <dir>/<scenario>_counts.csv.
void write_report(const std::filesystem::path &dir, const std::string &scenario, const Json &report,
                  const std::vector<CountRecord> *counts);

/// Plot-ready x,y,yerr tables from the reports in `dir`.
void emit_fig3a(const std::filesystem::path &dir, const std::filesystem::path &out);
void emit_fig4a(const std::filesystem::path &dir, const std::filesystem::path &out);

}  // namespace ptsim::experiments

#endif
