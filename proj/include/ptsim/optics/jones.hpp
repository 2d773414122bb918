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

#ifndef PTSIM_OPTICS_JONES_HPP
#define PTSIM_OPTICS_JONES_HPP

#include "ptsim/qstate/types.hpp"

namespace ptsim::optics {

/// Half-wave plate, fast axis at theta: [[cos2t, sin2t], [sin2t, -cos2t]].
Operator jones_hwp(double theta_deg);

/// Quarter-wave plate with fast axis at theta, R(t) diag(1, i) R(-t).
Operator jones_qwp(double theta_deg);

/// Projector onto cos(t)|H> + sin(t)|V>.
Operator polarizer_projector(double theta_deg);

/// The same matrices before phase normalization; path-selective lowering
/// needs them so the relative phase between paths is kept.
CMatrix hwp_matrix(double theta_deg);
CMatrix qwp_matrix(double theta_deg);

/// Multiplies by the phase that makes the first entry with modulus above
/// `eps` (row-major) real and nonnegative.
CMatrix normalize_phase(const CMatrix &m, double eps = 1e-12);

/// cos/sin of an angle in degrees, exact at multiples of 90.
double cos_deg(double deg);
double sin_deg(double deg);

}  // namespace ptsim::optics

#endif
