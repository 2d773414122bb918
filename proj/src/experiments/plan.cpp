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

#include "ptsim/experiments/plan.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "ptsim/errors.hpp"
#include "ptsim/noise/coincidence.hpp"
#include "ptsim/qstate/ops.hpp"

namespace ptsim::experiments {

namespace {

optics::AngleMap solve_or_throw(const optics::Circuit &c, std::size_t arm, const std::vector<std::string> &free,
                                const std::string &label) {
    auto s = optics::solve_analyzer(c, arm, free, states::qubit(label).projector().as_operator());
    if (!s) throw InvalidInput("no analyzer setting on arm " + std::to_string(arm) + " realizes basis state " + label);
    return *s;
}

double get(const optics::AngleMap &m, const std::string &k) {
    auto it = m.find(k);
    return it == m.end() ? 0.0 : it->second;
}

std::vector<std::string> labels(bool minimal) {
    if (minimal) return {"H", "V", "+", "L"};
    std::vector<std::string> out;
    for (auto l : states::six_labels()) out.emplace_back(l);
    return out;
}

}  // namespace

std::vector<PlannedSetting> entanglement_plan(const optics::Circuit &c, bool minimal) {
    std::map<std::string, optics::AngleMap> stokes, anti;
    const auto ls = labels(minimal);
    for (const auto &l : ls) {
        stokes[l] = solve_or_throw(c, 0, {"QWP3", "P2"}, l);
        anti[l] = solve_or_throw(c, 1, {"HWP5", "QWP2"}, l);
    }
    std::vector<PlannedSetting> plan;
    for (const auto &a : ls)
        for (const auto &b : ls) {
            PlannedSetting s;
            s.id = "ent:" + a + ":" + b;
            s.overrides = stokes[a];
            s.overrides.insert(anti[b].begin(), anti[b].end());
            s.angles = {0.0, get(s.overrides, "P2"), get(s.overrides, "HWP5"), get(s.overrides, "QWP2")};
            s.logical = tomo::product_setting(s.id, {a, b});
            plan.push_back(std::move(s));
        }
    return plan;
}

std::vector<PlannedSetting> scan_plan(const optics::Circuit &c, double step_deg, const std::string &anti_stokes,
                                      double qwp3_deg) {
    if (!(step_deg > 0.0)) throw InvalidInput("scan step must be positive");
    const auto anti = solve_or_throw(c, 1, {"HWP5", "QWP2"}, anti_stokes);
    std::vector<PlannedSetting> plan;
    const auto n = static_cast<int>(std::floor(180.0 / step_deg + 1e-9));
    for (int i = 0; i <= n; ++i) {
        const double th = step_deg * i;
        char id[32];
        std::snprintf(id, sizeof id, "vis:%05.1f", th);
        PlannedSetting s;
        s.id = id;
        s.overrides = anti;
        s.overrides["QWP3"] = qwp3_deg;
        s.overrides["P2"] = th;
        s.angles = {0.0, th, get(anti, "HWP5"), get(anti, "QWP2")};
        s.scan_angle = th;
        plan.push_back(std::move(s));
    }
    return plan;
}

const optics::BellSetting &bell_setting(const std::string &outcome) {
    for (const auto &b : optics::canonical_bell_settings())
        if (outcome == b.name) return b;
    throw InvalidInput("unknown Bell outcome '" + outcome + "'");
}

Operator pauli_frame(const std::string &outcome) {
    if (outcome == "phi+") return gates::I2();
    if (outcome == "phi-") return gates::Z();
    if (outcome == "psi+") return gates::X();
    if (outcome == "psi-") return gates::X() * gates::Z();
    throw InvalidInput("unknown Bell outcome '" + outcome + "'");
}

optics::AngleMap teleport_preparation(const optics::Circuit &c, const std::string &label, const std::string &outcome) {
    const auto &b = bell_setting(outcome);
    const CMatrix frame = pauli_frame(outcome).matrix();
    const CMatrix want = states::qubit(label).projector().matrix();
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            optics::AngleMap a{{"HWP2", 22.5 * i}, {"QWP1", 22.5 * j}, {"HWP3", b.hwp3}, {"P2", b.p2}};
            CMatrix e = optics::compile(c, a).emission_povm(0).matrix();
            const cplx tr = e.trace();
            if (std::abs(tr) < 1e-12) continue;
            CMatrix bob = frame * CMatrix(e.transpose()) * frame.adjoint() / tr;
            if ((bob - want).cwiseAbs().maxCoeff() < 1e-9) return {{"HWP2", 22.5 * i}, {"QWP1", 22.5 * j}};
        }
    throw InvalidInput("no HWP2/QWP1 setting prepares input " + label + " for outcome " + outcome);
}

std::vector<PlannedSetting> teleport_plan(const optics::Circuit &c, const std::string &input,
                                          const std::string &outcome) {
    const auto &b = bell_setting(outcome);
    const CMatrix frame = pauli_frame(outcome).matrix();
    optics::AngleMap base = teleport_preparation(c, input, outcome);
    base["HWP3"] = b.hwp3;
    base["P2"] = b.p2;
    std::vector<PlannedSetting> plan;
    for (auto l : states::six_labels()) {
        const std::string basis(l);
        PlannedSetting s;
        s.id = "tel:" + input + ":" + outcome + ":" + basis;
        s.overrides = base;
        auto anti = solve_or_throw(c, 1, {"HWP5", "QWP2"}, basis);
        s.overrides.insert(anti.begin(), anti.end());
        s.angles = {b.hwp3, b.p2, get(anti, "HWP5"), get(anti, "QWP2")};
        CMatrix m = states::qubit(basis).projector().matrix();
        s.logical = {s.id, Operator(CMatrix(frame * m * frame.adjoint())), {basis}};
        s.logical.validate();
        plan.push_back(std::move(s));
    }
    return plan;
}

std::vector<noise::SettingProbabilities> plan_probabilities(const optics::Circuit &c,
                                                            const std::vector<PlannedSetting> &plan,
                                                            const noise::JointState &state,
                                                            const noise::NoiseParams &p) {
    std::vector<noise::SettingProbabilities> out;
    out.reserve(plan.size());
    for (const auto &s : plan)
        out.push_back(noise::coincidence_probabilities(state, optics::compile(c, s.overrides), p, s.id, s.angles));
    return out;
}

std::vector<tomo::MeasurementSetting> logical_settings(const std::vector<PlannedSetting> &plan) {
    std::vector<tomo::MeasurementSetting> out;
    for (const auto &s : plan) out.push_back(s.logical);
    return out;
}

std::vector<MeanCounts> mean_counts(const std::vector<noise::SettingProbabilities> &probs, double t,
                                    const noise::NoiseParams &p) {
    const double n = p.pulses(t);
    std::vector<MeanCounts> out;
    for (const auto &pr : probs) out.push_back({pr.setting_id, n * (pr.p_true + pr.p_accidental), n * pr.p_accidental, t});
    return out;
}

std::optional<ParsedSettingId> parse_setting_id(const std::string &id) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= id.size(); ++i)
        if (i == id.size() || id[i] == ':') {
            parts.push_back(id.substr(start, i - start));
            start = i + 1;
        }
    auto is_label = [](const std::string &l) {
        for (auto k : states::six_labels())
            if (k == l) return true;
        return false;
    };
    if (parts.size() == 3 && parts[0] == "ent" && is_label(parts[1]) && is_label(parts[2]))
        return ParsedSettingId{"ent", "", tomo::product_setting(id, {parts[1], parts[2]})};
    if (parts.size() == 4 && parts[0] == "tel" && is_label(parts[1]) && is_label(parts[3])) {
        Operator frame;
        try {
            frame = pauli_frame(parts[2]);
        } catch (const InvalidInput &) {
            return std::nullopt;
        }
        CMatrix m = states::qubit(parts[3]).projector().matrix();
        tomo::MeasurementSetting s{id, Operator(CMatrix(frame.matrix() * m * frame.matrix().adjoint())), {parts[3]}};
        return ParsedSettingId{"tel:" + parts[1], parts[1], s};
    }
    if (parts.size() <= 2) {
        for (const auto &p : parts)
            if (!is_label(p)) return std::nullopt;
        return ParsedSettingId{"", "", tomo::product_setting(id, parts)};
    }
    return std::nullopt;
}

}  // namespace ptsim::experiments
