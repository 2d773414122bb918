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

#ifndef PTSIM_NOISE_SOURCE_HPP
#define PTSIM_NOISE_SOURCE_HPP

#include "ptsim/noise/params.hpp"
#include "ptsim/qstate/types.hpp"

namespace ptsim::noise {

/// Per-pulse sector probabilities. `single` is the postselected single pair
/// whose phonon is still retrievable; `unretrieved` holds single pairs whose
/// phonon decayed; `both_paths` one pair in each path; `double_pair` two
/// pairs in one path; `higher` the truncated remainder.
struct SectorWeights {
    double vacuum = 1.0;
    double single = 0.0;
    double unretrieved = 0.0;
    double both_paths = 0.0;
    double double_pair = 0.0;
    double higher = 0.0;

    double sum() const { return vacuum + single + unretrieved + both_paths + double_pair + higher; }
};

/// Single-pair sector over (photon path x photon polarization x phonon path),
/// index 2 * (2 * path + pol) + phonon.
struct JointState {
    DensityMatrix rho;
    SectorWeights weights;
    double retrieval = 1.0;  // phonon survival factor applied to the multi-pair sectors

    double norm_kept() const { return weights.single; }
};

inline constexpr std::size_t kJointDim = 8;

std::size_t joint_index(std::size_t photon_path, std::size_t photon_pol, std::size_t phonon_path);

/// One path: |U,H>|U> with weights (1 - p_s - d, p_s, d), d = p_s^2 when double pairs are on.
JointState emit_pair(const NoiseParams &p);

/// Both paths pumped with equal amplitude: single sector
/// sqrt((1+e)/2)|U,H>|U> + sqrt((1-e)/2)|L,H>|L>.
JointState dual_path_source(const NoiseParams &p);

/// Amplitude damping moves exp(-delay/tau) of the single sector out of
/// retrieval; pure dephasing damps phonon U/L coherences.
JointState phonon_decoherence(const JointState &s, const NoiseParams &p);

/// dual_path_source followed by phonon_decoherence.
JointState prepared_source(const NoiseParams &p);

}  // namespace ptsim::noise

#endif
