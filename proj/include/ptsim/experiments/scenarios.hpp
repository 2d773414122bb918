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

#ifndef PTSIM_EXPERIMENTS_SCENARIOS_HPP
#define PTSIM_EXPERIMENTS_SCENARIOS_HPP

#include <array>
#include <string>
#include <vector>

#include "ptsim/experiments/analysis.hpp"
#include "ptsim/experiments/config.hpp"

namespace ptsim::experiments {

/// Loads cfg.circuit_file; throws InvalidInput unless both arms end in a detector.
optics::Circuit load_two_arm_circuit(const ExperimentConfig &cfg);

/// Poisson (or rounded-mean) counts for a plan under cfg.noise.
std::vector<CountRecord> simulate_counts(const optics::Circuit &c, const std::vector<PlannedSetting> &plan,
                                         const ExperimentConfig &cfg);

struct EntanglementRun {
    EntanglementSetup setup;
    std::vector<CountRecord> counts;  // 36 grid settings, then the scan
    EntanglementAnalysis analysis;
    tomo::BootstrapResult bootstrap;
    double uu_rate = 0.0;  // expected raw coincidences per second in the UU setting
};

EntanglementRun run_entanglement(const ExperimentConfig &cfg);
/// Scan only: visibility raw and subtracted.
EntanglementRun run_visibility_scan(const ExperimentConfig &cfg);

struct BellStatistics {
    std::array<std::string, 4> outcome{"phi+", "phi-", "psi+", "psi-"};
    std::array<double, 4> probability{};  // per pulse, Stokes detection behind each Bell analyzer setting
    std::array<double, 4> expected{};     // normalized over the four outcomes
    std::array<long, 4> counts{};
    long trials = 0;
    double success_fraction = 0.0;  // configured outcome's share of entangled events
    bool within_3sigma = true;
};

/// Postselected trials drawn from the four outcome probabilities for the first input label.
BellStatistics bell_outcome_statistics(const ExperimentConfig &cfg);

struct TeleportRun {
    TeleportSetup setup;
    std::vector<CountRecord> counts;
    TeleportAnalysis analysis;
    tomo::BootstrapResult bootstrap;
    BellStatistics bell;
};

TeleportRun run_teleport(const ExperimentConfig &cfg);

/// Noise-averaged observables from expected counts (no sampling).
struct AnalyticObservables {
    double fe_raw = 0.0, fe_sub = 0.0;
    double v_raw = 0.0, v_sub = 0.0;
    double uu_rate = 0.0;
};

/// Precompiled entanglement grid and scan; evaluate() is cheap per noise point.
class AnalyticModel {
  public:
    AnalyticModel(const optics::Circuit &c, const ExperimentConfig &cfg);
    AnalyticObservables evaluate(const noise::NoiseParams &p) const;

  private:
    std::vector<PlannedSetting> grid_, scan_;
    std::vector<optics::CompiledCircuit> grid_c_, scan_c_;
    std::vector<tomo::MeasurementSetting> logical_;
};

struct CalibrationResult {
    noise::NoiseParams params;
    AnalyticObservables observables;
    double target_fe = 0.0, target_vis = 0.0;
    double residual = 0.0;  // (F_e - target)^2 + (V - target)^2
    int iterations = 0;
    bool converged = false;
    std::vector<std::string> free;
};

inline constexpr double kCalibrationTolerance = 1e-4;
inline constexpr double kSbrBounds[2] = {1e-2, 1e6};
inline constexpr double kEtaReadBounds[2] = {1e-3, 1.0};

/// Coordinate descent with Brent line searches over the free parameters
/// (sbr searched in log10).
CalibrationResult calibrate_noise(const ExperimentConfig &cfg);

}  // namespace ptsim::experiments

#endif
