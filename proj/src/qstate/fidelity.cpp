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

#include "ptsim/qstate/fidelity.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include <gsl/gsl_multimin.h>

#include "ptsim/errors.hpp"
#include "ptsim/qstate/ops.hpp"

namespace ptsim {

double state_fidelity(const PureState &phi, const DensityMatrix &rho, const Tolerances &tol) {
    if (phi.dim() != rho.dim()) throw InvalidInput("state_fidelity: dimension mismatch");
    cplx f = phi.amplitudes().dot(rho.matrix() * phi.amplitudes());
    if (std::abs(f.imag()) > tol.imag_residue) throw InvalidInput("state_fidelity: complex overlap");
    return f.real();
}

Operator euler_unitary(double theta, double phi, double lambda) {
    const cplx i(0.0, 1.0);
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return Operator(2, {c, -std::exp(i * lambda) * s, std::exp(i * phi) * s, std::exp(i * (phi + lambda)) * c});
}

PureState maximally_entangled(const Operator &u) {
    if (u.dim() != 2) throw InvalidInput("maximally_entangled: expected a 2x2 unitary");
    return PureState::normalized(kron(u.matrix(), CMatrix::Identity(2, 2)) * states::phi_plus().amplitudes());
}

namespace {

struct OverlapProblem {
    Eigen::Matrix4cd rho;
};

// <Phi_U|rho|Phi_U> with Phi_U = (U x I)|Phi+> has components U_{a b}/sqrt2 at index 2a + b.
double overlap(const Eigen::Matrix4cd &rho, double theta, double phi, double lambda) {
    const cplx i(0.0, 1.0);
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Vector4cd v(c * r, -std::exp(i * lambda) * s * r, std::exp(i * phi) * s * r,
                       std::exp(i * (phi + lambda)) * c * r);
    return v.dot(rho * v).real();
}

double negative_overlap(const gsl_vector *x, void *params) {
    auto *p = static_cast<OverlapProblem *>(params);
    return -overlap(p->rho, gsl_vector_get(x, 0), gsl_vector_get(x, 1), gsl_vector_get(x, 2));
}

struct SimplexDeleter {
    void operator()(gsl_multimin_fminimizer *m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
    void operator()(gsl_vector *v) const { gsl_vector_free(v); }
};

}  // namespace

FefResult fully_entangled_fraction(const DensityMatrix &rho, const FefOptions &opts) {
    if (rho.dim() != 4) throw InvalidInput("fully_entangled_fraction: expected a two-qubit state");
    if (!is_physical_density(rho.matrix(), opts.tol)) throw PhysicalityError("fully_entangled_fraction: non-physical rho");

    OverlapProblem problem{rho.matrix()};
    gsl_multimin_function fn{&negative_overlap, 3, &problem};

    std::unique_ptr<gsl_multimin_fminimizer, SimplexDeleter> solver(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3));
    std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(3));
    std::unique_ptr<gsl_vector, VectorDeleter> step(gsl_vector_alloc(3));

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    double best = -1.0;
    double bt = 0, bp = 0, bl = 0;
    const double size_tol = std::sqrt(opts.value_tolerance) * 0.1;
    for (int start = 0; start < std::max(1, opts.starts); ++start) {
        double t0 = 0, p0 = 0, l0 = 0;
        if (start > 0) {
            t0 = 0.5 * angle(rng);
            p0 = angle(rng);
            l0 = angle(rng);
        }
        gsl_vector_set(x.get(), 0, t0);
        gsl_vector_set(x.get(), 1, p0);
        gsl_vector_set(x.get(), 2, l0);
        gsl_vector_set_all(step.get(), 0.6);
        gsl_multimin_fminimizer_set(solver.get(), &fn, x.get(), step.get());
        for (int it = 0; it < opts.max_iterations; ++it) {
            if (gsl_multimin_fminimizer_iterate(solver.get()) != 0) break;
            double size = gsl_multimin_fminimizer_size(solver.get());
            if (gsl_multimin_test_size(size, size_tol) == GSL_SUCCESS) break;
        }
        double v = -solver->fval;
        if (v > best + opts.value_tolerance * 1e-3) {
            best = v;
            bt = gsl_vector_get(solver->x, 0);
            bp = gsl_vector_get(solver->x, 1);
            bl = gsl_vector_get(solver->x, 2);
        }
    }
    Operator u = euler_unitary(bt, bp, bl);
    return FefResult{overlap(problem.rho, bt, bp, bl), maximally_entangled(u), u};
}

}  // namespace ptsim
