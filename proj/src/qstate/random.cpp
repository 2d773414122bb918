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

#include "ptsim/qstate/random.hpp"

#include <cmath>

namespace ptsim {

Operator haar_su2(Engine &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    double a = g(rng), b = g(rng), c = g(rng), d = g(rng);
    double n = std::sqrt(a * a + b * b + c * c + d * d);
    cplx alpha(a / n, b / n), beta(c / n, d / n);
    return Operator(2, {alpha, -std::conj(beta), beta, std::conj(alpha)});
}

PureState haar_state(Engine &rng, std::size_t dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    CVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double re = g(rng);
        double im = g(rng);
        v(i) = cplx(re, im);
    }
    return PureState::normalized(v);
}

DensityMatrix ginibre_state(Engine &rng, std::size_t dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    auto n = static_cast<Eigen::Index>(dim);
    CMatrix G(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            double re = g(rng);
            double im = g(rng);
            G(r, c) = cplx(re, im);
        }
    }
    return DensityMatrix::from_unnormalized(G * G.adjoint());
}

}  // namespace ptsim
