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

#ifndef PTSIM_EXPERIMENTS_PLAN_HPP
#define PTSIM_EXPERIMENTS_PLAN_HPP

#include <optional>
#include <string>
#include <vector>

#include "ptsim/noise/counts.hpp"
#include "ptsim/optics/circuit.hpp"
#include "ptsim/optics/compile.hpp"
#include "ptsim/tomo/settings.hpp"

namespace ptsim::experiments {

/// One physical configuration of the table: label overrides, the CSV angle
/// columns, and the logical projector it realizes on the analyzed qubit(s).
struct PlannedSetting {
    std::string id;
    optics::AngleMap overrides;
    noise::AnalyzerAngles angles;
    tomo::MeasurementSetting logical;  // empty povm_element for scan points
    double scan_angle = 0.0;
};

/// ent:<stokes>:<anti-stokes> over the 6x6 grid (or {H,V,+,L}^2 when minimal).
std::vector<PlannedSetting> entanglement_plan(const optics::Circuit &c, bool minimal = false);

/// vis:<P2 angle> from 0 to 180 degrees inclusive, anti-Stokes fixed.
std::vector<PlannedSetting> scan_plan(const optics::Circuit &c, double step_deg, const std::string &anti_stokes,
                                      double qwp3_deg);

/// Pauli correction for a Bell outcome: I, Z, X, XZ for phi+, phi-, psi+, psi-.
Operator pauli_frame(const std::string &outcome);
const optics::BellSetting &bell_setting(const std::string &outcome);

/// Input preparation (HWP2, QWP1) that, after the outcome's Pauli frame,
/// leaves Bob in |label>. Throws InvalidInput if the grid has none.
optics::AngleMap teleport_preparation(const optics::Circuit &c, const std::string &label, const std::string &outcome);

/// tel:<input>:<outcome>:<basis>, six output bases per input. The logical
/// projector already carries the Pauli frame, so tomography returns the
/// corrected state.
std::vector<PlannedSetting> teleport_plan(const optics::Circuit &c, const std::string &input,
                                          const std::string &outcome);

std::vector<noise::SettingProbabilities> plan_probabilities(const optics::Circuit &c,
                                                            const std::vector<PlannedSetting> &plan,
                                                            const noise::JointState &state,
                                                            const noise::NoiseParams &p);

std::vector<tomo::MeasurementSetting> logical_settings(const std::vector<PlannedSetting> &plan);

/// Expected (real-valued) counts per setting.
struct MeanCounts {
    std::string id;
    double raw = 0.0;
    double delayed = 0.0;
    double t_sec = 1.0;
};
std::vector<MeanCounts> mean_counts(const std::vector<noise::SettingProbabilities> &probs, double t,
                                    const noise::NoiseParams &p);

/// Logical reading of a setting id: ent:a:b (two qubits), tel:in:outcome:b
/// (one qubit, Pauli frame applied, grouped by input) or bare labels a[:b].
struct ParsedSettingId {
    std::string group;  // "ent", "tel:<input>" or "" for bare labels
    std::string input;  // teleport input label
    tomo::MeasurementSetting setting;
};
std::optional<ParsedSettingId> parse_setting_id(const std::string &id);

}  // namespace ptsim::experiments

#endif
