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

#ifndef PTSIM_QSTATE_FIDELITY_HPP
#define PTSIM_QSTATE_FIDELITY_HPP

#include <cstdint>

#include "ptsim/qstate/types.hpp"

namespace ptsim {

/// <phi|rho|phi>. Throws InvalidInput on dimension mismatch or when the
/// imaginary residue exceeds `tol.imag_residue`.
double state_fidelity(const PureState &phi, const DensityMatrix &rho, const Tolerances &tol = kDefaultTolerances);

/// Single-qubit unitary from Euler angles (radians):
/// [[cos(t/2), -e^{i l} sin(t/2)], [e^{i p} sin(t/2), e^{i(p+l)} cos(t/2)]].
Operator euler_unitary(double theta, double phi, double lambda);

/// (U (x) I)|Phi+>.
PureState maximally_entangled(const Operator &u);

struct FefOptions {
    int starts = 20;
    double value_tolerance = 1e-9;
    int max_iterations = 4000;
    std::uint64_t seed = 0x5eedf00dULL;  // start points only; result is deterministic
    Tolerances tol{};
};

struct FefResult {
    double value = 0.0;
    PureState state;
    Operator unitary;
};

/// Fully entangled fraction: max over single-qubit U of <Phi_U|rho|Phi_U>,
/// Phi_U = (U (x) I)|Phi+>, found by multi-start Nelder-Mead over the Euler angles.
/// Throws PhysicalityError when rho is not a valid two-qubit state.
FefResult fully_entangled_fraction(const DensityMatrix &rho, const FefOptions &opts = {});

}  // namespace ptsim

#endif
