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

#include "ptsim/qstate/ops.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ptsim/errors.hpp"

namespace ptsim {

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    if (a.rows() > 0 && b.rows() > std::numeric_limits<Eigen::Index>::max() / a.rows()) {
        throw InvalidInput("kron: dimension overflow");
    }
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Operator tensor(const Operator &a, const Operator &b) { return Operator(kron(a.matrix(), b.matrix())); }

PureState tensor(const PureState &a, const PureState &b) {
    CVector out(a.amplitudes().size() * b.amplitudes().size());
    for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
        out.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()(i) * b.amplitudes();
    }
    return PureState::normalized(out);
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix(kron(a.matrix(), b.matrix()));
}

CMatrix partial_trace(const CMatrix &m, const std::vector<std::size_t> &dims, const std::set<std::size_t> &keep) {
    std::size_t total = 1;
    for (auto d : dims) {
        if (d == 0) throw InvalidInput("partial_trace: zero subsystem dimension");
        total *= d;
    }
    if (static_cast<std::size_t>(m.rows()) != total || m.rows() != m.cols()) {
        throw InvalidInput("partial_trace: matrix does not match subsystem dimensions");
    }
    if (keep.empty()) throw InvalidInput("partial_trace: keep set is empty");
    for (auto k : keep) {
        if (k >= dims.size()) throw InvalidInput("partial_trace: subsystem index " + std::to_string(k) + " out of range");
    }

    const std::size_t n = dims.size();
    std::vector<std::size_t> kept, traced;
    for (std::size_t s = 0; s < n; ++s) (keep.count(s) ? kept : traced).push_back(s);

    std::size_t dk = 1, dt = 1;
    for (auto s : kept) dk *= dims[s];
    for (auto s : traced) dt *= dims[s];

    // strides of each subsystem in the full index
    std::vector<std::size_t> stride(n);
    std::size_t acc = 1;
    for (std::size_t s = n; s-- > 0;) {
        stride[s] = acc;
        acc *= dims[s];
    }
    auto full_index = [&](std::size_t kidx, std::size_t tidx) {
        std::size_t idx = 0;
        for (std::size_t j = kept.size(); j-- > 0;) {
            idx += (kidx % dims[kept[j]]) * stride[kept[j]];
            kidx /= dims[kept[j]];
        }
        for (std::size_t j = traced.size(); j-- > 0;) {
            idx += (tidx % dims[traced[j]]) * stride[traced[j]];
            tidx /= dims[traced[j]];
        }
        return static_cast<Eigen::Index>(idx);
    };

    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t c = 0; c < dk; ++c) {
            cplx s = 0.0;
            for (std::size_t t = 0; t < dt; ++t) s += m(full_index(r, t), full_index(c, t));
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s;
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho, const std::set<std::size_t> &keep) {
    std::size_t d = rho.dim();
    std::size_t qubits = 0;
    while ((std::size_t{1} << qubits) < d) ++qubits;
    if ((std::size_t{1} << qubits) != d) throw InvalidInput("partial_trace: dimension is not a power of two");
    return DensityMatrix(partial_trace(rho.matrix(), std::vector<std::size_t>(qubits, 2), keep));
}

DensityMatrix conjugate(const DensityMatrix &rho, const Operator &u) {
    if (u.dim() != rho.dim()) throw InvalidInput("conjugate: dimension mismatch");
    return DensityMatrix(CMatrix(u.matrix() * rho.matrix() * u.matrix().adjoint()));
}

cplx trace_product(const CMatrix &a, const CMatrix &b) {
    // sum_ij a_ij b_ji without forming the product
    return (a.array() * b.transpose().array()).sum();
}

namespace gates {
Operator I2() { return Operator::identity(2); }
Operator X() { return Operator(2, {0.0, 1.0, 1.0, 0.0}); }
Operator Z() { return Operator(2, {1.0, 0.0, 0.0, -1.0}); }
Operator SigmaY() { return Operator(2, {0.0, cplx(0, -1), cplx(0, 1), 0.0}); }
Operator Y() { return Operator(2, {0.0, -1.0, 1.0, 0.0}); }
Operator Hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return Operator(2, {s, s, s, -s});
}
}  // namespace gates

namespace states {

PureState qubit(std::string_view label) {
    const double s = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    if (label == "H" || label == "U" || label == "0") return PureState{1.0, 0.0};
    if (label == "V" || label == "1") return PureState{0.0, 1.0};
    if (label == "+" || label == "D") return PureState{s, s};
    if (label == "-" || label == "A") return PureState{s, -s};
    if (label == "L") return PureState{s, i * s};
    if (label == "R") return PureState{s, -i * s};
    throw InvalidInput("unknown qubit state label '" + std::string(label) + "'");
}

const std::vector<std::string_view> &six_labels() {
    static const std::vector<std::string_view> labels{"H", "V", "+", "-", "L", "R"};
    return labels;
}

PureState phi_plus() {
    const double s = 1.0 / std::sqrt(2.0);
    return PureState{s, 0.0, 0.0, s};
}
PureState phi_minus() {
    const double s = 1.0 / std::sqrt(2.0);
    return PureState{s, 0.0, 0.0, -s};
}
PureState psi_plus() {
    const double s = 1.0 / std::sqrt(2.0);
    return PureState{0.0, s, s, 0.0};
}
PureState psi_minus() {
    const double s = 1.0 / std::sqrt(2.0);
    return PureState{0.0, s, -s, 0.0};
}

DensityMatrix werner(double p) {
    if (!(p >= -1.0 / 3.0 && p <= 1.0)) throw InvalidInput("werner: p outside [-1/3, 1]");
    CMatrix m = p * phi_plus().projector().matrix() + (1.0 - p) * CMatrix::Identity(4, 4) / 4.0;
    return DensityMatrix(m);
}

}  // namespace states

}  // namespace ptsim
