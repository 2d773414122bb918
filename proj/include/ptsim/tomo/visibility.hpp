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

#ifndef PTSIM_TOMO_VISIBILITY_HPP
#define PTSIM_TOMO_VISIBILITY_HPP

#include <vector>

namespace ptsim::tomo {

struct ScanPoint {
    double angle_deg = 0.0;
    double counts = 0.0;
};

/// C(theta) = A (1 + V cos(2 theta - phi)) + B. The flat background B is not
/// separable from A, so it is pinned at 0 and V = amplitude / mean level.
struct VisibilityFit {
    double visibility = 0.0;  // in [0, 1]
    double amplitude = 0.0;   // A V
    double phase_deg = 0.0;   // phi, in [0, 360)
    double offset = 0.0;      // A
    double background = 0.0;  // B
    double residual = 0.0;    // RMS of the fit
    double visibility_stderr = 0.0;
    bool degenerate = false;  // constant scan: V = 0, uncertainty unbounded
};

/// Needs >= 8 points whose angles span >= 180 degrees.
VisibilityFit fit_visibility(const std::vector<ScanPoint> &scan);

}  // namespace ptsim::tomo

#endif
