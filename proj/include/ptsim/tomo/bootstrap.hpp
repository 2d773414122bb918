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

#ifndef PTSIM_TOMO_BOOTSTRAP_HPP
#define PTSIM_TOMO_BOOTSTRAP_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ptsim/noise/counts.hpp"

namespace ptsim::tomo {

using Scalars = std::map<std::string, double>;
/// Must be a pure function of its counts.
using Pipeline = std::function<Scalars(const std::vector<noise::CountRecord> &)>;

struct BootstrapResult {
    Scalars nominal;  // pipeline on the observed counts
    Scalars mean;
    Scalars stddev;   // sample standard deviation over resamples
    int n_resamples = 0;
    int failed = 0;   // resamples whose pipeline threw
};

/// Resample r redraws raw ~ Poisson(raw) and delayed ~ Poisson(delayed)
/// per record from the stream (derive_seed(seed, r), setting_id).
std::vector<noise::CountRecord> poisson_resample(const std::vector<noise::CountRecord> &counts, std::uint64_t seed,
                                                 std::uint64_t r);

BootstrapResult bootstrap_errors_serial(const Pipeline &pipeline, const std::vector<noise::CountRecord> &counts,
                                        int n_resamples, std::uint64_t seed);
/// Parallel over resamples; bit-identical to the serial result.
BootstrapResult bootstrap_errors_omp(const Pipeline &pipeline, const std::vector<noise::CountRecord> &counts,
                                     int n_resamples, std::uint64_t seed);

}  // namespace ptsim::tomo

#endif
