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

#include "ptsim/qstate/types.hpp"

#include <cmath>
#include <string>

#include "ptsim/errors.hpp"

namespace ptsim {

namespace {

void require_square(const CMatrix &m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InvalidInput("operator must be a nonempty square matrix, got " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()));
    }
}

double hermitian_defect(const CMatrix &m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

Operator::Operator(CMatrix m) : m_(std::move(m)) { require_square(m_); }

Operator::Operator(std::size_t dim, std::initializer_list<cplx> row_major) {
    if (row_major.size() != dim * dim) {
        throw InvalidInput("Operator: expected " + std::to_string(dim * dim) + " entries");
    }
    m_.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    auto it = row_major.begin();
    for (Eigen::Index r = 0; r < m_.rows(); ++r) {
        for (Eigen::Index c = 0; c < m_.cols(); ++c) {
            m_(r, c) = *it++;
        }
    }
}

Operator Operator::identity(std::size_t dim) {
    auto n = static_cast<Eigen::Index>(dim);
    return Operator(CMatrix::Identity(n, n));
}

Operator Operator::zero(std::size_t dim) {
    auto n = static_cast<Eigen::Index>(dim);
    return Operator(CMatrix::Zero(n, n));
}

Operator Operator::operator*(const Operator &o) const {
    if (dim() != o.dim()) throw InvalidInput("Operator product: dimension mismatch");
    return Operator(m_ * o.m_);
}

Operator Operator::operator+(const Operator &o) const {
    if (dim() != o.dim()) throw InvalidInput("Operator sum: dimension mismatch");
    return Operator(m_ + o.m_);
}

Operator Operator::operator-(const Operator &o) const {
    if (dim() != o.dim()) throw InvalidInput("Operator difference: dimension mismatch");
    return Operator(m_ - o.m_);
}

bool Operator::is_hermitian(double tol) const { return hermitian_defect(m_) <= tol; }

bool Operator::is_unitary(double tol) const {
    CMatrix d = m_.adjoint() * m_ - CMatrix::Identity(m_.rows(), m_.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_projector(double tol) const {
    return is_hermitian(tol) && (m_ * m_ - m_).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_finite() const { return m_.allFinite(); }

double Operator::max_abs_diff(const Operator &o) const {
    if (dim() != o.dim()) throw InvalidInput("max_abs_diff: dimension mismatch");
    return (m_ - o.m_).cwiseAbs().maxCoeff();
}

PureState::PureState(CVector amplitudes, const Tolerances &tol) : v_(std::move(amplitudes)) {
    if (v_.size() == 0) throw InvalidInput("PureState: empty amplitude vector");
    double n2 = v_.squaredNorm();
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > tol.norm) {
        throw InvalidInput("PureState: squared norm " + std::to_string(n2) + " is not 1");
    }
}

PureState::PureState(std::initializer_list<cplx> amplitudes) {
    CVector v(static_cast<Eigen::Index>(amplitudes.size()));
    Eigen::Index i = 0;
    for (cplx a : amplitudes) v(i++) = a;
    *this = PureState(std::move(v));
}

PureState PureState::normalized(const CVector &v) {
    double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("PureState::normalized: zero or non-finite vector");
    return PureState(CVector(v / n));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw InvalidInput("PureState::basis: index out of range");
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(v));
}

DensityMatrix PureState::projector() const { return DensityMatrix(CMatrix(v_ * v_.adjoint())); }

PureState PureState::apply(const Operator &u) const {
    if (u.dim() != dim()) throw InvalidInput("PureState::apply: dimension mismatch");
    return normalized(u.matrix() * v_);
}

bool is_physical_density(const CMatrix &m, const Tolerances &tol) {
    if (m.rows() != m.cols() || m.rows() == 0 || !m.allFinite()) return false;
    if (hermitian_defect(m) > tol.hermitian) return false;
    if (std::abs(m.trace() - cplx(1.0)) > tol.trace) return false;
    CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= tol.min_eigen;
}

DensityMatrix::DensityMatrix(CMatrix m, const Tolerances &tol) : m_(std::move(m)) {
    require_square(m_);
    if (!m_.allFinite()) throw PhysicalityError("DensityMatrix: non-finite entries");
    if (hermitian_defect(m_) > tol.hermitian) throw PhysicalityError("DensityMatrix: not Hermitian");
    if (std::abs(m_.trace() - cplx(1.0)) > tol.trace) {
        throw PhysicalityError("DensityMatrix: trace " + std::to_string(m_.trace().real()) + " is not 1");
    }
    if (min_eigenvalue() < tol.min_eigen) {
        throw PhysicalityError("DensityMatrix: negative eigenvalue " + std::to_string(min_eigenvalue()));
    }
}

DensityMatrix DensityMatrix::from_unnormalized(const CMatrix &m, const Tolerances &tol) {
    require_square(m);
    CMatrix h = 0.5 * (m + m.adjoint());
    double tr = h.trace().real();
    if (!(tr > 0.0) || !std::isfinite(tr)) throw PhysicalityError("DensityMatrix: nonpositive trace");
    return DensityMatrix(CMatrix(h / tr), tol);
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    auto n = static_cast<Eigen::Index>(dim);
    return DensityMatrix(CMatrix(CMatrix::Identity(n, n) / static_cast<double>(dim)));
}

double DensityMatrix::min_eigenvalue() const {
    CMatrix h = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double DensityMatrix::trace_distance(const DensityMatrix &o) const {
    if (dim() != o.dim()) throw InvalidInput("trace_distance: dimension mismatch");
    CMatrix d = m_ - o.m_;
    CMatrix h = 0.5 * (d + d.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace ptsim
