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

#ifndef PTSIM_OPTICS_COMPILE_HPP
#define PTSIM_OPTICS_COMPILE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptsim/optics/circuit.hpp"
#include "ptsim/qstate/types.hpp"

namespace ptsim::optics {

/// Path basis index: U = 0, L = 1. Mode index = 2 * path + polarization.
inline constexpr std::size_t kModeDim = 4;

struct ModeTransform {
    Operator op;
    bool projector = false;
    std::vector<std::string> sources;  // labels (or kind names) of the folded elements
};

struct CompiledArm {
    std::string dichroic;  // label of the dichroic that opens the arm, empty for a single-arm circuit
    std::string detector;  // detector label, empty when the arm has none
    std::vector<ModeTransform> transforms;
};

struct CompiledCircuit {
    std::vector<ModeTransform> source;
    std::vector<CompiledArm> arms;

    /// Product of the source and arm transforms, in order of application.
    Operator kraus(std::size_t arm) const;
    /// K^dagger K for the arm.
    Operator povm(std::size_t arm) const;
    /// POVM restricted to the emission modes |U,H>, |L,H>: a 2x2 operator on
    /// the photon's path qubit.
    Operator emission_povm(std::size_t arm) const;
};

/// Angle overrides keyed by element label.
using AngleMap = std::map<std::string, double>;

/// 4x4 lowering of one element on (path x polarization).
Operator lower(const OpticalElement &e);

/// Lowers every element; with `fold`, adjacent unitaries are pre-multiplied.
/// Throws InvalidInput for override labels that do not name an angled element.
CompiledCircuit compile(const Circuit &c, const AngleMap &angles = {}, bool fold = true);

/// Calcite recombination: |U,H> -> |U,H>, |L,V> -> -|U,V>, |U,V> -> |L,V>, |L,H> -> |L,H>.
Operator calcite_merge();

/// Effective POVM of HWP3 -> calcite C2 -> P2 -> detector on path U.
Operator bell_projector(double hwp3_deg, double p2_deg);

/// The four canonical (HWP3, P2) settings giving Phi+, Phi-, |UV>+|LH>, |UV>-|LH>.
struct BellSetting {
    const char *name;
    double hwp3, p2;
};
const std::vector<BellSetting> &canonical_bell_settings();

/// Grid search over the free labels (step `step_deg` in [0, 180)) for angles
/// whose emission POVM on `arm` equals `target` within `tol`. Lexicographically
/// first match, or nullopt.
std::optional<AngleMap> solve_analyzer(const Circuit &c, std::size_t arm, const std::vector<std::string> &free_labels,
                                       const Operator &target, const AngleMap &fixed = {}, double step_deg = 22.5,
                                       double tol = 1e-9);

}  // namespace ptsim::optics

#endif
