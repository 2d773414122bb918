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

#include "ptsim/qstate/channel.hpp"

#include <cmath>
#include <string>

#include "ptsim/errors.hpp"
#include "ptsim/qstate/ops.hpp"

namespace ptsim {

ProcessMatrix::ProcessMatrix(CMatrix chi, const Tolerances &tol) : chi_(std::move(chi)) {
    if (chi_.rows() != 4 || chi_.cols() != 4) throw InvalidInput("ProcessMatrix: chi must be 4x4");
    if (!chi_.allFinite()) throw PhysicalityError("ProcessMatrix: non-finite chi");
    if ((chi_ - chi_.adjoint()).cwiseAbs().maxCoeff() > tol.hermitian) {
        throw PhysicalityError("ProcessMatrix: chi is not Hermitian");
    }
    CMatrix h = 0.5 * (chi_ + chi_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < tol.min_eigen) {
        throw PhysicalityError("ProcessMatrix: chi has negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
    }
}

const std::array<CMatrix, 4> &ProcessMatrix::basis() {
    static const std::array<CMatrix, 4> e{gates::I2().matrix(), gates::X().matrix(), gates::Y().matrix(),
                                          gates::Z().matrix()};
    return e;
}

ProcessMatrix ProcessMatrix::identity() {
    CMatrix chi = CMatrix::Zero(4, 4);
    chi(0, 0) = 1.0;
    return ProcessMatrix(chi);
}

ProcessMatrix ProcessMatrix::from_unitary(const Operator &u) {
    if (u.dim() != 2) throw InvalidInput("ProcessMatrix::from_unitary: expected 2x2");
    Eigen::Vector4cd c;
    for (int m = 0; m < 4; ++m) c(m) = trace_product(basis()[m].adjoint(), u.matrix()) / 2.0;
    return ProcessMatrix(CMatrix(c * c.adjoint()));
}

ProcessMatrix ProcessMatrix::depolarizing(double p) {
    if (!(p >= 0.0 && p <= 4.0 / 3.0)) throw InvalidInput("depolarizing: p out of range");
    CMatrix chi = CMatrix::Zero(4, 4);
    chi(0, 0) = 1.0 - 3.0 * p / 4.0;
    chi(1, 1) = chi(2, 2) = chi(3, 3) = p / 4.0;
    return ProcessMatrix(chi);
}

ProcessMatrix ProcessMatrix::normalized() const {
    double t = trace();
    if (!(t > 0.0)) throw PhysicalityError("ProcessMatrix::normalized: zero trace");
    return ProcessMatrix(CMatrix(chi_ / t));
}

double ProcessMatrix::tp_residual() const {
    CMatrix chi = normalized().chi();
    CMatrix s = CMatrix::Zero(2, 2);
    for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) s += chi(m, n) * basis()[n].adjoint() * basis()[m];
    }
    return (s - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff();
}

CMatrix apply_chi_raw(const CMatrix &chi, const CMatrix &rho) {
    const auto &e = ProcessMatrix::basis();
    CMatrix out = CMatrix::Zero(2, 2);
    for (int m = 0; m < 4; ++m) {
        CMatrix er = e[m] * rho;
        for (int n = 0; n < 4; ++n) {
            if (chi(m, n) == cplx(0.0)) continue;
            out += chi(m, n) * er * e[n].adjoint();
        }
    }
    return out;
}

ChannelOutput apply_channel(const ProcessMatrix &chi, const DensityMatrix &rho_in) {
    if (rho_in.dim() != 2) throw InvalidInput("apply_channel: input must be a single-qubit state");
    CMatrix out = apply_chi_raw(chi.chi(), rho_in.matrix());
    double kept = out.trace().real();
    if (!(kept > 0.0)) throw PhysicalityError("apply_channel: output has zero norm");
    return ChannelOutput{DensityMatrix::from_unnormalized(out), kept};
}

double process_fidelity(const ProcessMatrix &chi, const ProcessMatrix &chi_ref) {
    cplx f = trace_product(chi.chi(), chi_ref.chi());
    if (std::abs(f.imag()) > 1e-10) throw InvalidInput("process_fidelity: complex trace");
    return f.real();
}

double average_fidelity_from_process(double f_p) {
    if (!(f_p >= 0.0 && f_p <= 1.0)) throw InvalidInput("average_fidelity_from_process: f_p outside [0, 1]");
    return (2.0 * f_p + 1.0) / 3.0;
}

}  // namespace ptsim
