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

#ifndef PTSIM_TOMO_SETTINGS_HPP
#define PTSIM_TOMO_SETTINGS_HPP

#include <string>
#include <vector>

#include "ptsim/noise/counts.hpp"
#include "ptsim/qstate/types.hpp"

namespace ptsim::tomo {

using noise::CountRecord;

/// One analyzer configuration: a projector on the analyzed qubit(s).
struct MeasurementSetting {
    std::string setting_id;
    Operator povm_element;
    std::vector<std::string> basis_label;  // one of H V + - L R per qubit

    /// Throws InvalidInput unless povm_element is a projector within 1e-10.
    void validate() const;
};

/// Projector built from the product of labelled single-qubit states.
MeasurementSetting product_setting(std::string setting_id, const std::vector<std::string> &labels);

/// 6 settings for one qubit, 36 for two (6x6 grid), or the 16-setting
/// {H,V,+,L}^2 subset when `minimal`. Ids are the labels joined by ':'
/// behind `prefix`.
std::vector<MeasurementSetting> local_grid(std::size_t qubits, const std::string &prefix = "",
                                           bool minimal = false);

struct CorrectedCount {
    double value = 0.0;
    bool clamped = false;
};

/// raw - delayed, clamped at zero.
CorrectedCount subtract_background(const CountRecord &raw);

/// Counts used by the likelihood: raw, or subtracted and clamped.
struct CountVector {
    std::vector<double> n;
    std::vector<double> t;
    int clamped = 0;
};
CountVector select_counts(const std::vector<CountRecord> &records, const std::vector<MeasurementSetting> &settings,
                          bool subtract);

/// Pauli-product names (I, X, Y, Z per qubit) whose direction the settings miss.
std::vector<std::string> missing_directions(const std::vector<MeasurementSetting> &settings, std::size_t dim);

}  // namespace ptsim::tomo

#endif
