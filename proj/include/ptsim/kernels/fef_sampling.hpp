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

#ifndef PTSIM_KERNELS_FEF_SAMPLING_HPP
#define PTSIM_KERNELS_FEF_SAMPLING_HPP

#include <cstdint>

#include "ptsim/qstate/types.hpp"

namespace ptsim::kernels {

struct SampledMax {
    double value = -1.0;
    std::uint64_t index = 0;  // smallest sample index attaining the max
};

/// Sampling oracle for the fully entangled fraction: the max of
/// <Phi_U|rho|Phi_U> over `samples` Haar-random U, sample i drawn from the
/// counter stream (seed, i). Independent of the Nelder-Mead optimizer.
SampledMax fef_sampling_serial(const CMatrix &rho, std::uint64_t samples, std::uint64_t seed);

/// OpenMP version; returns exactly the serial result.
SampledMax fef_sampling_omp(const CMatrix &rho, std::uint64_t samples, std::uint64_t seed);

/// The unitary used for sample i.
Operator fef_sample_unitary(std::uint64_t seed, std::uint64_t index);

}  // namespace ptsim::kernels

#endif
