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

#ifndef PTSIM_NOISE_PARAMS_HPP
#define PTSIM_NOISE_PARAMS_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>

namespace ptsim::noise {

enum class DephasingMode { AMPLITUDE_DAMPING, PURE_DEPHASING, BOTH };

std::string_view dephasing_name(DephasingMode m);
DephasingMode parse_dephasing(std::string_view s);

struct NoiseParams {
    double p_s = 0.01;
    double eta_read = 1.0;
    double eta_det_s = 1.0;
    double eta_det_as = 1.0;
    double tau_phonon = 7.0;                // ps
    std::optional<double> tau_dephase;      // ps, defaults to tau_phonon
    double read_delay = 0.388;              // ps
    double rep_rate = 76.0;                 // MHz
    double sbr = std::numeric_limits<double>::infinity();  // infinity: no accidentals
    DephasingMode dephasing_mode = DephasingMode::AMPLITUDE_DAMPING;
    bool include_double_pairs = false;
    double path_imbalance = 0.0;            // epsilon: |U|^2 = (1+eps)/2
    std::uint64_t seed = 1;

    /// Throws InvalidInput naming the first field out of range.
    void validate() const;
    double dephasing_time() const { return tau_dephase.value_or(tau_phonon); }
    double pulses(double seconds) const { return rep_rate * 1e6 * seconds; }
};

}  // namespace ptsim::noise

#endif
