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

#include "ptsim/optics/jones.hpp"

#include <cmath>
#include <numbers>

namespace ptsim::optics {

namespace {

// Returns true with the exact values when deg is a multiple of 90.
bool quadrant(double deg, double &c, double &s) {
    double q = deg / 90.0;
    if (q != std::round(q)) return false;
    long k = static_cast<long>(std::llround(q)) % 4;
    if (k < 0) k += 4;
    static constexpr double cs[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    c = cs[k][0];
    s = cs[k][1];
    return true;
}

}  // namespace

double cos_deg(double deg) {
    double c, s;
    if (quadrant(deg, c, s)) return c;
    return std::cos(deg * std::numbers::pi / 180.0);
}

double sin_deg(double deg) {
    double c, s;
    if (quadrant(deg, c, s)) return s;
    return std::sin(deg * std::numbers::pi / 180.0);
}

CMatrix normalize_phase(const CMatrix &m, double eps) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            double a = std::abs(m(r, c));
            if (a > eps) return m * (std::conj(m(r, c)) / a);
        }
    }
    return m;
}

CMatrix hwp_matrix(double theta_deg) {
    double c = cos_deg(2.0 * theta_deg), s = sin_deg(2.0 * theta_deg);
    CMatrix m(2, 2);
    m << c, s, s, -c;
    return m;
}

CMatrix qwp_matrix(double theta_deg) {
    double c = cos_deg(theta_deg), s = sin_deg(theta_deg);
    const cplx i(0.0, 1.0);
    // R diag(1, i) R^T with R = [[c, -s], [s, c]]
    CMatrix m(2, 2);
    m << c * c + i * s * s, c * s - i * c * s, c * s - i * c * s, s * s + i * c * c;
    return m;
}

Operator jones_hwp(double theta_deg) { return Operator(normalize_phase(hwp_matrix(theta_deg))); }

Operator jones_qwp(double theta_deg) { return Operator(normalize_phase(qwp_matrix(theta_deg))); }

Operator polarizer_projector(double theta_deg) {
    double c = cos_deg(theta_deg), s = sin_deg(theta_deg);
    return Operator(2, {c * c, c * s, c * s, s * s});
}

}  // namespace ptsim::optics
