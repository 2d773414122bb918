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

#ifndef PTSIM_QSTATE_TYPES_HPP
#define PTSIM_QSTATE_TYPES_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>

#include <Eigen/Dense>

namespace ptsim {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Numerical slack used by the physicality predicates. Every operation that
/// validates a state takes one of these, so callers can loosen or tighten it.
struct Tolerances {
    double norm = 1e-12;       // pure-state squared norm
    double hermitian = 1e-10;  // elementwise |A - A^dagger|
    double trace = 1e-10;      // |Tr rho - 1|
    double min_eigen = -1e-8;  // smallest admissible eigenvalue
    double imag_residue = 1e-10;
};

inline constexpr Tolerances kDefaultTolerances{};

/// A dim x dim complex matrix on a tensor-product qubit space. Unitarity and
/// Hermiticity are not invariants of the type; use the predicates.
///
/// Subsystem ordering convention, fixed project-wide: in a Kronecker product
/// the left factor is the most significant subsystem, so basis index
/// i = i_0 * d_1 * ... + i_{n-1} with subsystem 0 leftmost.
class Operator {
  public:
    Operator() = default;
    explicit Operator(CMatrix m);
    Operator(std::size_t dim, std::initializer_list<cplx> row_major);

    static Operator identity(std::size_t dim);
    static Operator zero(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const CMatrix &matrix() const { return m_; }
    cplx operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    Operator adjoint() const { return Operator(m_.adjoint()); }
    Operator operator*(const Operator &o) const;
    Operator operator+(const Operator &o) const;
    Operator operator-(const Operator &o) const;
    Operator operator*(cplx s) const { return Operator(m_ * s); }

    bool is_hermitian(double tol = 1e-10) const;
    bool is_unitary(double tol = 1e-12) const;
    bool is_projector(double tol = 1e-12) const;
    bool is_finite() const;

    /// Largest elementwise modulus difference.
    double max_abs_diff(const Operator &o) const;

  private:
    CMatrix m_;
};

class DensityMatrix;

/// Normalized state vector; squared norm is 1 within Tolerances::norm.
class PureState {
  public:
    PureState() = default;
    /// Throws InvalidInput unless the vector already has unit norm.
    explicit PureState(CVector amplitudes, const Tolerances &tol = kDefaultTolerances);
    PureState(std::initializer_list<cplx> amplitudes);

    /// Normalizes a nonzero vector.
    static PureState normalized(const CVector &v);
    static PureState basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
    const CVector &amplitudes() const { return v_; }
    cplx operator[](std::size_t i) const { return v_(static_cast<Eigen::Index>(i)); }

    DensityMatrix projector() const;
    PureState apply(const Operator &u) const;

  private:
    CVector v_;
};

/// Hermitian, unit-trace, PSD (within slack) matrix. Construction validates.
class DensityMatrix {
  public:
    DensityMatrix() = default;
    /// Throws PhysicalityError when any invariant is violated beyond `tol`.
    explicit DensityMatrix(CMatrix m, const Tolerances &tol = kDefaultTolerances);

    /// Normalizes trace and symmetrizes, then validates positivity.
    static DensityMatrix from_unnormalized(const CMatrix &m, const Tolerances &tol = kDefaultTolerances);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const CMatrix &matrix() const { return m_; }
    cplx operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
    Operator as_operator() const { return Operator(m_); }

    double min_eigenvalue() const;
    double purity() const;
    double trace_distance(const DensityMatrix &o) const;

  private:
    CMatrix m_;
};

/// Checks that a matrix satisfies the DensityMatrix invariants without throwing.
bool is_physical_density(const CMatrix &m, const Tolerances &tol = kDefaultTolerances);

}  // namespace ptsim

#endif
