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

#ifndef PTSIM_QSTATE_RANDOM_HPP
#define PTSIM_QSTATE_RANDOM_HPP

#include "ptsim/qstate/types.hpp"
#include "ptsim/rng.hpp"

namespace ptsim {

/// Haar-random element of SU(2) (uniform unit quaternion).
Operator haar_su2(Engine &rng);

/// Haar-random pure state of dimension `dim`.
PureState haar_state(Engine &rng, std::size_t dim);

/// Random mixed state: G G^dagger / Tr with complex Gaussian G (Ginibre, square).
DensityMatrix ginibre_state(Engine &rng, std::size_t dim);

}  // namespace ptsim

#endif
