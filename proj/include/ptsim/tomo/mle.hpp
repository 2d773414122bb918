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

#ifndef PTSIM_TOMO_MLE_HPP
#define PTSIM_TOMO_MLE_HPP

#include <cstdint>
#include <vector>

#include "ptsim/qstate/types.hpp"

namespace ptsim::tomo {

/// Poisson model mu_k = Tr(X Q_k) with X = T^dagger T, T lower triangular.
struct MleProblem {
    std::vector<CMatrix> q;  // Hermitian, PSD
    std::vector<double> n;   // nonnegative, real-valued after background subtraction
};

struct MleOptions {
    int restarts = 4;
    double gradient_tolerance = 1e-8;
    long max_iterations = 100000;
    std::uint64_t seed = 0x6d6c65ULL;
};

struct MleSolution {
    CMatrix x;                  // unnormalized, same scale as the counts
    double log_likelihood = 0;  // sum n log mu - mu
    long iterations = 0;        // summed over restarts
    bool converged = false;
    double gradient_norm = 0;
};

/// Throws InvalidInput when all counts are zero or sizes disagree.
MleSolution solve_mle(const MleProblem &p, const MleOptions &opts = {});

/// Least-squares Hermitian X with Tr(X Q_k) ~ n_k (no positivity).
CMatrix linear_inversion(const MleProblem &p);

/// Rank of the map X -> (Tr(X Q_k))_k over Hermitian X, and an orthonormal
/// basis of Hermitian operators it cannot see.
struct SpanReport {
    int rank = 0;
    int dim2 = 0;
    std::vector<CMatrix> missing;
};
SpanReport measurement_span(const std::vector<CMatrix> &q, std::size_t dim);

}  // namespace ptsim::tomo

#endif
