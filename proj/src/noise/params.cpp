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

#include "ptsim/noise/params.hpp"

#include <cmath>
#include <string>

#include "ptsim/errors.hpp"

namespace ptsim::noise {

std::string_view dephasing_name(DephasingMode m) {
    switch (m) {
        case DephasingMode::AMPLITUDE_DAMPING: return "AMPLITUDE_DAMPING";
        case DephasingMode::PURE_DEPHASING: return "PURE_DEPHASING";
        case DephasingMode::BOTH: return "BOTH";
    }
    return "?";
}

DephasingMode parse_dephasing(std::string_view s) {
    if (s == "AMPLITUDE_DAMPING") return DephasingMode::AMPLITUDE_DAMPING;
    if (s == "PURE_DEPHASING") return DephasingMode::PURE_DEPHASING;
    if (s == "BOTH") return DephasingMode::BOTH;
    throw InvalidInput("unknown dephasing_mode " + std::string(s));
}

void NoiseParams::validate() const {
    auto in01 = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
    if (!(std::isfinite(p_s) && p_s >= 0.0 && p_s < 1.0)) throw InvalidInput("p_s must lie in [0, 1)");
    if (include_double_pairs && p_s + p_s * p_s > 1.0) throw InvalidInput("p_s too large for the double-pair sector");
    if (!in01(eta_read)) throw InvalidInput("eta_read must lie in [0, 1]");
    if (!in01(eta_det_s)) throw InvalidInput("eta_det_s must lie in [0, 1]");
    if (!in01(eta_det_as)) throw InvalidInput("eta_det_as must lie in [0, 1]");
    if (!(std::isfinite(tau_phonon) && tau_phonon > 0.0)) throw InvalidInput("tau_phonon must be positive");
    if (tau_dephase && !(std::isfinite(*tau_dephase) && *tau_dephase > 0.0))
        throw InvalidInput("tau_dephase must be positive");
    if (!(std::isfinite(read_delay) && read_delay >= 0.0)) throw InvalidInput("read_delay must be nonnegative");
    if (!(std::isfinite(rep_rate) && rep_rate > 0.0)) throw InvalidInput("rep_rate must be positive");
    if (!(sbr > 0.0)) throw InvalidInput("sbr must be positive");
    if (!(std::isfinite(path_imbalance) && std::abs(path_imbalance) < 1.0))
        throw InvalidInput("path_imbalance must lie in (-1, 1)");
}

}  // namespace ptsim::noise
