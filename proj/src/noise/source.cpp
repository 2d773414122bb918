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

#include "ptsim/noise/source.hpp"

#include <cmath>

namespace ptsim::noise {

std::size_t joint_index(std::size_t photon_path, std::size_t photon_pol, std::size_t phonon_path) {
    return 2 * (2 * photon_path + photon_pol) + phonon_path;
}

JointState emit_pair(const NoiseParams &p) {
    p.validate();
    const double d = p.include_double_pairs ? p.p_s * p.p_s : 0.0;
    JointState s;
    s.rho = PureState::basis(kJointDim, joint_index(0, 0, 0)).projector();
    s.weights.vacuum = 1.0 - p.p_s - d;
    s.weights.single = p.p_s;
    s.weights.double_pair = d;
    return s;
}

JointState dual_path_source(const NoiseParams &p) {
    p.validate();
    const double d = p.include_double_pairs ? p.p_s * p.p_s : 0.0;
    const double v = 1.0 - p.p_s - d;  // per-path vacuum
    CVector psi = CVector::Zero(kJointDim);
    psi(static_cast<Eigen::Index>(joint_index(0, 0, 0))) = std::sqrt((1.0 + p.path_imbalance) / 2.0);
    psi(static_cast<Eigen::Index>(joint_index(1, 0, 1))) = std::sqrt((1.0 - p.path_imbalance) / 2.0);
    JointState s;
    s.rho = PureState::normalized(psi).projector();
    SectorWeights &w = s.weights;
    w.vacuum = v * v;
    w.single = 2.0 * p.p_s * v;
    w.both_paths = p.p_s * p.p_s;
    w.double_pair = 2.0 * d * v;
    w.higher = std::max(0.0, 1.0 - (w.vacuum + w.single + w.both_paths + w.double_pair));
    return s;
}

JointState phonon_decoherence(const JointState &s, const NoiseParams &p) {
    JointState out = s;
    if (p.read_delay == 0.0) return out;
    const bool amp = p.dephasing_mode != DephasingMode::PURE_DEPHASING;
    const bool deph = p.dephasing_mode != DephasingMode::AMPLITUDE_DAMPING;
    if (amp) {
        const double r = std::exp(-p.read_delay / p.tau_phonon);
        out.weights.unretrieved += out.weights.single * (1.0 - r);
        out.weights.single *= r;
        out.retrieval *= r;
    }
    if (deph) {
        const double f = std::exp(-p.read_delay / p.dephasing_time());
        CMatrix m = out.rho.matrix();
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                if ((i & 1) != (j & 1)) m(i, j) *= f;
        out.rho = DensityMatrix(m);
    }
    return out;
}

JointState prepared_source(const NoiseParams &p) { return phonon_decoherence(dual_path_source(p), p); }

}  // namespace ptsim::noise
