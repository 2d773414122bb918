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

#include "ptsim/tomo/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "ptsim/errors.hpp"

namespace ptsim::tomo {

VisibilityFit fit_visibility(const std::vector<ScanPoint> &scan) {
    if (scan.size() < 8) throw InvalidInput("fit_visibility: need at least 8 scan points");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto &p : scan) {
        if (!std::isfinite(p.angle_deg) || !std::isfinite(p.counts) || p.counts < 0.0)
            throw InvalidInput("fit_visibility: angles and counts must be finite, counts nonnegative");
        lo = std::min(lo, p.angle_deg);
        hi = std::max(hi, p.angle_deg);
    }
    if (hi - lo < 180.0 - 1e-9) throw InvalidInput("fit_visibility: scan must span at least 180 degrees");

    const auto n = static_cast<Eigen::Index>(scan.size());
    Eigen::MatrixXd a(n, 3);
    Eigen::VectorXd y(n);
    constexpr double deg = std::numbers::pi / 180.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double th = 2.0 * scan[static_cast<std::size_t>(i)].angle_deg * deg;
        a(i, 0) = 1.0;
        a(i, 1) = std::cos(th);
        a(i, 2) = std::sin(th);
        y(i) = scan[static_cast<std::size_t>(i)].counts;
    }
    Eigen::Vector3d c = a.colPivHouseholderQr().solve(y);
    VisibilityFit f;
    const double amp = std::hypot(c(1), c(2));
    const double rss = (a * c - y).squaredNorm();
    f.residual = std::sqrt(rss / static_cast<double>(n));
    f.offset = c(0);
    f.background = 0.0;
    f.amplitude = amp;
    const double scale = std::max(std::abs(c(0)), y.cwiseAbs().maxCoeff());
    if (!(c(0) > 0.0) || amp <= 1e-12 * std::max(scale, 1e-300)) {
        f.degenerate = true;
        f.visibility = 0.0;
        f.amplitude = 0.0;
        f.visibility_stderr = std::numeric_limits<double>::infinity();
        return f;
    }
    double ph = std::atan2(c(2), c(1)) / deg;
    if (ph < 0.0) ph += 360.0;
    f.phase_deg = ph;
    f.visibility = std::min(1.0, amp / c(0));
    if (n > 3) {
        const double s2 = rss / static_cast<double>(n - 3);
        Eigen::Matrix3d cov = s2 * (a.transpose() * a).inverse();
        Eigen::Vector3d g(-amp / (c(0) * c(0)), c(1) / (amp * c(0)), c(2) / (amp * c(0)));
        f.visibility_stderr = std::sqrt(std::max(0.0, g.dot(cov * g)));
    }
    return f;
}

}  // namespace ptsim::tomo
