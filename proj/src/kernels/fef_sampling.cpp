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

#include "ptsim/kernels/fef_sampling.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <omp.h>

#include "ptsim/errors.hpp"
#include "ptsim/rng.hpp"

namespace ptsim::kernels {

namespace {

// Unit quaternion from four Box-Muller normals on the counter stream.
Eigen::Vector4d quaternion(std::uint64_t seed, std::uint64_t index) {
    double g[4];
    for (int k = 0; k < 2; ++k) {
        double u1 = counter_uniform(seed, 4 * index + 2 * k);
        double u2 = counter_uniform(seed, 4 * index + 2 * k + 1);
        double r = std::sqrt(-2.0 * std::log1p(-u1));
        g[2 * k] = r * std::cos(2.0 * std::numbers::pi * u2);
        g[2 * k + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
    }
    Eigen::Vector4d q(g[0], g[1], g[2], g[3]);
    return q / q.norm();
}

// (U x I)|Phi+> has entries U_ab / sqrt2 at index 2a + b.
double sample_overlap(const Eigen::Matrix4cd &rho, const Eigen::Vector4d &q) {
    const double r = 1.0 / std::sqrt(2.0);
    cplx alpha(q(0), q(1)), beta(q(2), q(3));
    Eigen::Vector4cd v(alpha * r, -std::conj(beta) * r, beta * r, std::conj(alpha) * r);
    return v.dot(rho * v).real();
}

Eigen::Matrix4cd as_fixed(const CMatrix &rho) {
    if (rho.rows() != 4 || rho.cols() != 4) throw InvalidInput("fef sampling: expected a 4x4 state");
    return Eigen::Matrix4cd(rho);
}

}  // namespace

Operator fef_sample_unitary(std::uint64_t seed, std::uint64_t index) {
    Eigen::Vector4d q = quaternion(seed, index);
    cplx alpha(q(0), q(1)), beta(q(2), q(3));
    return Operator(2, {alpha, -std::conj(beta), beta, std::conj(alpha)});
}

SampledMax fef_sampling_serial(const CMatrix &rho, std::uint64_t samples, std::uint64_t seed) {
    Eigen::Matrix4cd m = as_fixed(rho);
    SampledMax best;
    for (std::uint64_t i = 0; i < samples; ++i) {
        double v = sample_overlap(m, quaternion(seed, i));
        if (v > best.value) best = {v, i};
    }
    return best;
}

SampledMax fef_sampling_omp(const CMatrix &rho, std::uint64_t samples, std::uint64_t seed) {
    Eigen::Matrix4cd m = as_fixed(rho);
    const int threads = omp_get_max_threads();
    std::vector<SampledMax> partial(static_cast<std::size_t>(threads));
    const auto n = static_cast<std::int64_t>(samples);
#pragma omp parallel num_threads(threads)
    {
        SampledMax local;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            double v = sample_overlap(m, quaternion(seed, static_cast<std::uint64_t>(i)));
            if (v > local.value) local = {v, static_cast<std::uint64_t>(i)};
        }
        partial[static_cast<std::size_t>(omp_get_thread_num())] = local;
    }
    SampledMax best;
    for (const auto &p : partial) {
        if (p.value > best.value || (p.value == best.value && p.index < best.index)) best = p;
    }
    return best;
}

}  // namespace ptsim::kernels
