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

#ifndef PTSIM_TOMO_STATE_HPP
#define PTSIM_TOMO_STATE_HPP

#include <map>
#include <string>
#include <vector>

#include "ptsim/qstate/channel.hpp"
#include "ptsim/tomo/mle.hpp"
#include "ptsim/tomo/settings.hpp"

namespace ptsim::tomo {

struct Diagnostics {
    double log_likelihood = 0.0;
    long iterations = 0;
    bool converged = false;
    double gradient_norm = 0.0;
    int clamped = 0;  // settings whose subtracted count was clamped to zero
};

struct StateEstimate {
    DensityMatrix rho;
    Diagnostics diag;
    std::map<std::string, double> error_bars;
};

struct ProcessEstimate {
    ProcessMatrix chi;         // Tr chi = 1
    double kept_trace = 0.0;   // Tr of the unnormalized fit relative to counts scale
    double tp_residual = 0.0;
    Diagnostics diag;
    std::map<std::string, double> error_bars;
};

struct TomoOptions {
    bool subtract_background = false;
    MleOptions mle{};
};

/// Poisson maximum likelihood over rho = T^dagger T / Tr. Records are matched
/// to settings by setting_id; order does not matter.
StateEstimate qst_mle(const std::vector<CountRecord> &records, const std::vector<MeasurementSetting> &settings,
                      std::size_t dim, const TomoOptions &opts = {});

/// Same, on already-selected counts (n_k, t_k) aligned with settings.
StateEstimate qst_mle_counts(const CountVector &counts, const std::vector<MeasurementSetting> &settings,
                             std::size_t dim, const MleOptions &opts = {});

/// Output tomography of one single-qubit input.
struct ProcessRun {
    PureState input;
    std::vector<MeasurementSetting> settings;
    std::vector<CountRecord> records;
};

/// chi = A^dagger A fitted to every run's counts jointly, then trace-normalized.
ProcessEstimate qpt_mle(const std::vector<ProcessRun> &runs, const TomoOptions &opts = {});

}  // namespace ptsim::tomo

#endif
