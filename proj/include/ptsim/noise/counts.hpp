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

#ifndef PTSIM_NOISE_COUNTS_HPP
#define PTSIM_NOISE_COUNTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ptsim/noise/coincidence.hpp"

namespace ptsim::noise {

struct CountRecord {
    std::string setting_id;
    AnalyzerAngles angles;
    std::uint64_t raw = 0;
    std::uint64_t delayed = 0;
    std::uint64_t singles_s = 0;
    std::uint64_t singles_as = 0;
    double t_sec = 1.0;

    bool operator==(const CountRecord &o) const;
};

struct SampledCounts {
    CountRecord record;
    std::uint64_t true_part = 0;  // raw = true_part + accidental_part
    std::uint64_t accidental_part = 0;
};

struct SamplingOptions {
    bool shot_noise = true;  // false: every count is its rounded mean
};

/// Draws from the stream (params.seed, setting_id); raw and delayed windows are independent.
SampledCounts sample_counts(const SettingProbabilities &probs, double integration_time, const NoiseParams &params,
                            const SamplingOptions &opts = {});

std::vector<SampledCounts> sample_counts_serial(const std::vector<SettingProbabilities> &probs,
                                                double integration_time, const NoiseParams &params,
                                                const SamplingOptions &opts = {});
/// OpenMP over settings; identical to the serial result.
std::vector<SampledCounts> sample_counts_omp(const std::vector<SettingProbabilities> &probs, double integration_time,
                                             const NoiseParams &params, const SamplingOptions &opts = {});

inline constexpr const char *kCountCsvHeader = "setting_id,hwp3,p2,hwp5,qwp2,raw,delayed,singles_s,singles_as,t_sec";

void write_counts_csv(std::ostream &out, const std::vector<CountRecord> &records);
std::vector<CountRecord> read_counts_csv(std::istream &in);
std::vector<CountRecord> read_counts_csv(const std::string &path);

}  // namespace ptsim::noise

#endif
