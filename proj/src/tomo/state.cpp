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

#include "ptsim/tomo/state.hpp"

#include <algorithm>

#include "ptsim/errors.hpp"

namespace ptsim::tomo {

namespace {

void require_complete(const std::vector<CMatrix> &q, std::size_t dim, const std::vector<MeasurementSetting> &settings) {
    SpanReport span = measurement_span(q, dim);
    if (span.rank == span.dim2) return;
    std::string msg = "settings are not informationally complete (rank " + std::to_string(span.rank) + " of " +
                      std::to_string(span.dim2) + "); missing directions:";
    for (const auto &name : missing_directions(settings, dim)) msg += " " + name;
    throw InvalidInput(msg);
}

Diagnostics diagnostics(const MleSolution &s, int clamped) {
    return {s.log_likelihood, s.iterations, s.converged, s.gradient_norm, clamped};
}

}  // namespace

StateEstimate qst_mle_counts(const CountVector &counts, const std::vector<MeasurementSetting> &settings,
                             std::size_t dim, const MleOptions &opts) {
    if (dim != 2 && dim != 4) throw InvalidInput("qst_mle: dim must be 2 or 4");
    if (counts.n.size() != settings.size() || counts.t.size() != settings.size())
        throw InvalidInput("qst_mle: counts and settings disagree in length");
    MleProblem p;
    std::vector<CMatrix> bare;
    for (std::size_t k = 0; k < settings.size(); ++k) {
        const auto &s = settings[k];
        s.validate();
        if (s.povm_element.dim() != dim) throw InvalidInput("qst_mle: setting '" + s.setting_id + "' has wrong dimension");
        bare.push_back(s.povm_element.matrix());
        p.q.push_back(counts.t[k] * s.povm_element.matrix());
        p.n.push_back(counts.n[k]);
    }
    require_complete(bare, dim, settings);
    MleSolution sol = solve_mle(p, opts);
    StateEstimate e;
    e.rho = DensityMatrix::from_unnormalized(sol.x);
    e.diag = diagnostics(sol, counts.clamped);
    return e;
}

StateEstimate qst_mle(const std::vector<CountRecord> &records, const std::vector<MeasurementSetting> &settings,
                      std::size_t dim, const TomoOptions &opts) {
    return qst_mle_counts(select_counts(records, settings, opts.subtract_background), settings, dim, opts.mle);
}

ProcessEstimate qpt_mle(const std::vector<ProcessRun> &runs, const TomoOptions &opts) {
    const auto &basis = ProcessMatrix::basis();
    // inputs must span the 4-dimensional operator space
    Eigen::MatrixXcd inputs(4, static_cast<Eigen::Index>(runs.size()));
    for (std::size_t j = 0; j < runs.size(); ++j) {
        if (runs[j].input.dim() != 2) throw InvalidInput("qpt_mle: inputs must be single-qubit states");
        CMatrix rho = runs[j].input.projector().matrix();
        inputs.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const CVector>(rho.data(), 4);
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(inputs);
    lu.setThreshold(1e-9);
    if (runs.empty() || lu.rank() < 4)
        throw InvalidInput("qpt_mle: need at least 4 linearly independent input states, got " +
                           std::to_string(runs.empty() ? 0 : lu.rank()));

    MleProblem p;
    int clamped = 0;
    for (const auto &run : runs) {
        CountVector cv = select_counts(run.records, run.settings, opts.subtract_background);
        clamped += cv.clamped;
        const CMatrix rho = run.input.projector().matrix();
        for (std::size_t k = 0; k < run.settings.size(); ++k) {
            const auto &s = run.settings[k];
            s.validate();
            if (s.povm_element.dim() != 2) throw InvalidInput("qpt_mle: output settings must be single-qubit");
            const CMatrix &m = s.povm_element.matrix();
            CMatrix q(4, 4);
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    q(a, b) = (m * basis[static_cast<std::size_t>(b)] * rho * basis[static_cast<std::size_t>(a)].adjoint()).trace();
            p.q.push_back(cv.t[k] * q);
            p.n.push_back(cv.n[k]);
        }
    }
    MleSolution sol = solve_mle(p, opts.mle);
    ProcessEstimate e;
    CMatrix chi = 0.5 * (sol.x + sol.x.adjoint());
    double tr = chi.trace().real();
    e.kept_trace = tr;
    e.chi = ProcessMatrix(chi / tr);
    e.tp_residual = e.chi.tp_residual();
    e.diag = diagnostics(sol, clamped);
    return e;
}

}  // namespace ptsim::tomo
