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

#ifndef PTSIM_QSTATE_CHANNEL_HPP
#define PTSIM_QSTATE_CHANNEL_HPP

#include <array>

#include "ptsim/qstate/types.hpp"

namespace ptsim {

/// Single-qubit process in the fixed operator basis E = {I, X, Y = -i sigma_y, Z}:
/// rho -> sum_mn chi_mn E_m rho E_n^dagger.
class ProcessMatrix {
  public:
    ProcessMatrix() = default;
    /// Validates Hermiticity and positivity; trace is not constrained
    /// (postselected processes are trace-nonincreasing).
    explicit ProcessMatrix(CMatrix chi, const Tolerances &tol = kDefaultTolerances);

    static ProcessMatrix identity();
    /// chi for rho -> U rho U^dagger.
    static ProcessMatrix from_unitary(const Operator &u);
    /// diag(1-3p/4, p/4, p/4, p/4).
    static ProcessMatrix depolarizing(double p);

    /// The basis {I, X, -i sigma_y, Z}.
    static const std::array<CMatrix, 4> &basis();

    const CMatrix &chi() const { return chi_; }
    double trace() const { return chi_.trace().real(); }
    /// chi / Tr(chi).
    ProcessMatrix normalized() const;
    /// || sum_mn chi_mn E_n^dagger E_m - I ||_max for the trace-normalized chi.
    double tp_residual() const;

  private:
    CMatrix chi_;
};

struct ChannelOutput {
    DensityMatrix rho;
    double kept_norm = 1.0;  // Tr of the unnormalized output
};

/// Evaluates the chi-sum on a one-qubit input; renormalizes to unit trace and
/// reports the pre-normalization trace in kept_norm.
ChannelOutput apply_channel(const ProcessMatrix &chi, const DensityMatrix &rho_in);

/// Unnormalized sum_mn chi_mn E_m rho E_n^dagger.
CMatrix apply_chi_raw(const CMatrix &chi, const CMatrix &rho);

/// Re Tr(chi chi_ref); throws InvalidInput if the imaginary residue exceeds 1e-10.
double process_fidelity(const ProcessMatrix &chi, const ProcessMatrix &chi_ref);

/// (2 f_p + 1) / 3; throws InvalidInput for f_p outside [0, 1].
double average_fidelity_from_process(double f_p);

}  // namespace ptsim

#endif
