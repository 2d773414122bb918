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

#ifndef PTSIM_QSTATE_OPS_HPP
#define PTSIM_QSTATE_OPS_HPP

#include <set>
#include <string_view>
#include <vector>

#include "ptsim/qstate/types.hpp"

namespace ptsim {

// Kronecker products; left factor is the most significant subsystem.
CMatrix kron(const CMatrix &a, const CMatrix &b);
Operator tensor(const Operator &a, const Operator &b);
PureState tensor(const PureState &a, const PureState &b);
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// Reduced state over the subsystems in `keep` (qubit indices, 0 = leftmost).
/// `rho.dim()` must be 2^n; throws InvalidInput on a bad index set.
DensityMatrix partial_trace(const DensityMatrix &rho, const std::set<std::size_t> &keep);

/// Same, for arbitrary local dimensions, e.g. {4, 2} for (photon modes) x (phonon path).
CMatrix partial_trace(const CMatrix &m, const std::vector<std::size_t> &dims, const std::set<std::size_t> &keep);

/// rho -> U rho U^dagger.
DensityMatrix conjugate(const DensityMatrix &rho, const Operator &u);

/// Tr(A B), complex.
cplx trace_product(const CMatrix &a, const CMatrix &b);

namespace gates {
Operator I2();
Operator X();        // sigma_x
Operator Z();        // sigma_z
Operator SigmaY();   // sigma_y
Operator Y();        // -i sigma_y, the real "Y" of the process basis
Operator Hadamard();
}  // namespace gates

namespace states {
/// Polarization/path eigenstates by label: H, V, +, -, L, R with
/// |L> = (|H> + i|V>)/sqrt2 and |R> = (|H> - i|V>)/sqrt2.
PureState qubit(std::string_view label);
const std::vector<std::string_view> &six_labels();

PureState phi_plus();   // (|00> + |11>)/sqrt2
PureState phi_minus();  // (|00> - |11>)/sqrt2
PureState psi_plus();   // (|01> + |10>)/sqrt2
PureState psi_minus();  // (|01> - |10>)/sqrt2

/// p |Phi+><Phi+| + (1 - p) I/4.
DensityMatrix werner(double p);
}  // namespace states

}  // namespace ptsim

#endif
