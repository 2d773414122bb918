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

#include "ptsim/tomo/settings.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "ptsim/errors.hpp"
#include "ptsim/qstate/ops.hpp"
#include "ptsim/tomo/mle.hpp"

namespace ptsim::tomo {

void MeasurementSetting::validate() const {
    if (!povm_element.is_projector(1e-10))
        throw InvalidInput("setting '" + setting_id + "': POVM element is not a projector");
}

MeasurementSetting product_setting(std::string setting_id, const std::vector<std::string> &labels) {
    if (labels.empty()) throw InvalidInput("product_setting: no labels");
    PureState psi = states::qubit(labels.front());
    for (std::size_t i = 1; i < labels.size(); ++i) psi = tensor(psi, states::qubit(labels[i]));
    MeasurementSetting s{std::move(setting_id), psi.projector().as_operator(), labels};
    s.validate();
    return s;
}

std::vector<MeasurementSetting> local_grid(std::size_t qubits, const std::string &prefix, bool minimal) {
    if (qubits != 1 && qubits != 2) throw InvalidInput("local_grid: one or two qubits");
    std::vector<std::string> labels;
    if (minimal)
        labels = {"H", "V", "+", "L"};
    else
        for (auto l : states::six_labels()) labels.emplace_back(l);
    std::vector<MeasurementSetting> out;
    if (qubits == 1) {
        for (const auto &a : labels) out.push_back(product_setting(prefix + a, {a}));
    } else {
        for (const auto &a : labels)
            for (const auto &b : labels) out.push_back(product_setting(prefix + a + ":" + b, {a, b}));
    }
    return out;
}

CorrectedCount subtract_background(const CountRecord &raw) {
    const double d = static_cast<double>(raw.raw) - static_cast<double>(raw.delayed);
    if (d < 0.0) return {0.0, true};
    return {d, false};
}

CountVector select_counts(const std::vector<CountRecord> &records, const std::vector<MeasurementSetting> &settings,
                          bool subtract) {
    std::unordered_map<std::string, const CountRecord *> by_id;
    for (const auto &r : records)
        if (!by_id.emplace(r.setting_id, &r).second) throw InvalidInput("duplicate count record '" + r.setting_id + "'");
    CountVector cv;
    for (const auto &s : settings) {
        auto it = by_id.find(s.setting_id);
        if (it == by_id.end()) throw InvalidInput("no count record for setting '" + s.setting_id + "'");
        const CountRecord &r = *it->second;
        if (!(r.t_sec > 0.0) || !std::isfinite(r.t_sec))
            throw InvalidInput("record '" + r.setting_id + "': integration time must be positive");
        if (subtract) {
            auto c = subtract_background(r);
            cv.n.push_back(c.value);
            if (c.clamped) ++cv.clamped;
        } else {
            cv.n.push_back(static_cast<double>(r.raw));
        }
        cv.t.push_back(r.t_sec);
    }
    return cv;
}

std::vector<std::string> missing_directions(const std::vector<MeasurementSetting> &settings, std::size_t dim) {
    if (dim != 2 && dim != 4) throw InvalidInput("missing_directions: dim must be 2 or 4");
    std::vector<CMatrix> q;
    for (const auto &s : settings) q.push_back(s.povm_element.matrix());
    SpanReport span = measurement_span(q, dim);
    const std::array<std::pair<char, CMatrix>, 4> pauli{{{'I', gates::I2().matrix()},
                                                         {'X', gates::X().matrix()},
                                                         {'Y', gates::SigmaY().matrix()},
                                                         {'Z', gates::Z().matrix()}}};
    std::vector<std::pair<std::string, CMatrix>> products;
    if (dim == 2) {
        for (const auto &[n, m] : pauli) products.emplace_back(std::string(1, n), m);
    } else {
        for (const auto &[a, ma] : pauli)
            for (const auto &[b, mb] : pauli) products.emplace_back(std::string{a, b}, kron(ma, mb));
    }
    std::vector<std::string> out;
    for (const auto &[name, p] : products) {
        double w = 0.0;
        for (const auto &m : span.missing) w = std::max(w, std::abs((p * m).trace().real()));
        if (w > 1e-9) out.push_back(name);
    }
    return out;
}

}  // namespace ptsim::tomo
