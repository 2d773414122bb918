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

#ifndef PTSIM_EXPERIMENTS_ANALYSIS_HPP
#define PTSIM_EXPERIMENTS_ANALYSIS_HPP

#include <string>
#include <vector>

#include "ptsim/experiments/plan.hpp"
#include "ptsim/tomo/bootstrap.hpp"
#include "ptsim/tomo/state.hpp"
#include "ptsim/tomo/visibility.hpp"

namespace ptsim::experiments {

using noise::CountRecord;
using tomo::Scalars;

struct EntanglementSetup {
    std::vector<tomo::MeasurementSetting> grid;
    std::vector<std::pair<std::string, double>> scan;  // setting id, P2 angle
    bool subtract = true;
};

struct EntanglementAnalysis {
    tomo::StateEstimate raw, sub;
    double fe_raw = 0.0, fe_sub = 0.0;
    tomo::VisibilityFit vis_raw, vis_sub;
    bool has_sub = false;
    bool has_scan = false;
    Scalars scalars() const;  // F_e_raw, V_raw and, when present, F_e_sub, V_sub
};

EntanglementAnalysis analyze_entanglement(const EntanglementSetup &setup, const std::vector<CountRecord> &records);

/// Scan points from records: raw or background-subtracted (clamped) counts.
std::vector<tomo::ScanPoint> scan_points(const std::vector<std::pair<std::string, double>> &scan,
                                         const std::vector<CountRecord> &records, bool subtract);

struct TeleportSetup {
    std::vector<std::string> inputs;
    std::vector<std::vector<tomo::MeasurementSetting>> settings;  // per input, Pauli frame applied
    bool subtract = true;
};

struct TeleportBranch {
    std::vector<tomo::StateEstimate> outputs;
    std::vector<double> fidelity;  // per input
    double average = 0.0;
    tomo::ProcessEstimate process;
    double f_p = 0.0;
    double f_bar = 0.0;
};

struct TeleportAnalysis {
    TeleportBranch raw, sub;
    bool has_sub = false;
    bool has_process = false;  // needs four independent inputs
    std::vector<std::string> inputs;
    /// F_<label>_raw, F_avg_raw, F_p_raw, F_bar_raw and the _sub twins.
    Scalars scalars() const;
};

TeleportAnalysis analyze_teleport(const TeleportSetup &setup, const std::vector<CountRecord> &records);

}  // namespace ptsim::experiments

#endif
