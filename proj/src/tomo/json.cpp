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

#include "ptsim/tomo/json.hpp"

#include <cmath>

#include "ptsim/errors.hpp"

namespace ptsim::tomo {

Json matrix_json(const CMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

CMatrix matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("matrix JSON must be a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.front().size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw InvalidInput("matrix JSON rows must have equal length");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Json &e = row[static_cast<std::size_t>(c)];
            if (!e.is_array() || e.size() != 2) throw InvalidInput("matrix JSON entries must be [re, im]");
            m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

Json diagnostics_json(const Diagnostics &d) {
    return {{"log_likelihood", d.log_likelihood},
            {"iterations", d.iterations},
            {"converged", d.converged},
            {"gradient_norm", d.gradient_norm},
            {"clamped_settings", d.clamped}};
}

Json state_json(const StateEstimate &e) {
    return {{"rho", matrix_json(e.rho.matrix())}, {"diagnostics", diagnostics_json(e.diag)}, {"error_bars", e.error_bars}};
}

Json process_json(const ProcessEstimate &e) {
    return {{"chi", matrix_json(e.chi.chi())},
            {"kept_trace", e.kept_trace},
            {"tp_residual", e.tp_residual},
            {"diagnostics", diagnostics_json(e.diag)},
            {"error_bars", e.error_bars}};
}

Json visibility_json(const VisibilityFit &v) {
    Json j{{"V", v.visibility},      {"amplitude", v.amplitude}, {"phase_deg", v.phase_deg},
           {"offset", v.offset},     {"background", v.background}, {"residual", v.residual},
           {"degenerate", v.degenerate}};
    j["V_stderr"] = std::isfinite(v.visibility_stderr) ? Json(v.visibility_stderr) : Json(nullptr);
    return j;
}

Json bootstrap_json(const BootstrapResult &b) {
    return {{"n_resamples", b.n_resamples}, {"failed", b.failed}, {"mean", b.mean}, {"stddev", b.stddev}};
}

}  // namespace ptsim::tomo
