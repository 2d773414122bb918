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

#ifndef PTSIM_NOISE_COINCIDENCE_HPP
#define PTSIM_NOISE_COINCIDENCE_HPP

#include <string>
#include <vector>

#include "ptsim/noise/source.hpp"
#include "ptsim/optics/compile.hpp"

namespace ptsim::noise {

struct AnalyzerAngles {
    double hwp3 = 0.0, p2 = 0.0, hwp5 = 0.0, qwp2 = 0.0;
};

/// Per-pulse probabilities for one measurement setting.
struct SettingProbabilities {
    std::string setting_id;
    AnalyzerAngles angles;
    double p_true = 0.0;
    double p_accidental = 0.0;
    double p_singles_s = 0.0;
    double p_singles_as = 0.0;
};

/// Stokes and anti-Stokes detection operators for one setting: a 4x4 POVM on
/// the photon modes and a 2x2 POVM on the phonon path qubit.
struct DetectionPovms {
    Operator stokes;
    Operator anti_stokes;
    double noise_marginal = 1.0;  // unpolarized-light transmission product, relative to a polarizer pair
};

/// Reads arm 0 (Stokes) and arm 1 (anti-Stokes) of a compiled circuit; both
/// arms must end in a detector.
DetectionPovms detection_povms(const optics::CompiledCircuit &c);

/// True coincidence probability per pulse for the given POVMs.
double true_coincidence(const JointState &s, const DetectionPovms &d, const NoiseParams &p);

/// True UU coincidence probability at eta_read = 1; sets the accidental scale.
double uu_reference_signal(const JointState &s, const NoiseParams &p);

SettingProbabilities coincidence_probabilities(const JointState &s, const optics::CompiledCircuit &c,
                                               const NoiseParams &p, std::string setting_id = {},
                                               AnalyzerAngles angles = {});

}  // namespace ptsim::noise

#endif
