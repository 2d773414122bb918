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

#include "ptsim/experiments/analysis.hpp"

#include <unordered_map>

#include "ptsim/errors.hpp"
#include "ptsim/qstate/channel.hpp"
#include "ptsim/qstate/fidelity.hpp"
#include "ptsim/qstate/ops.hpp"

namespace ptsim::experiments {

namespace {

std::vector<CountRecord> subset(const std::vector<CountRecord> &records,
                                const std::vector<tomo::MeasurementSetting> &settings) {
    std::unordered_map<std::string, const CountRecord *> by_id;
    for (const auto &r : records) by_id.emplace(r.setting_id, &r);
    std::vector<CountRecord> out;
    for (const auto &s : settings) {
        auto it = by_id.find(s.setting_id);
        if (it == by_id.end()) throw InvalidInput("no count record for setting '" + s.setting_id + "'");
        out.push_back(*it->second);
    }
    return out;
}

bool independent_inputs(const std::vector<std::string> &labels) {
    Eigen::MatrixXcd m(4, static_cast<Eigen::Index>(labels.size()));
    for (std::size_t j = 0; j < labels.size(); ++j) {
        CMatrix rho = states::qubit(labels[j]).projector().matrix();
        m.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const CVector>(rho.data(), 4);
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
    lu.setThreshold(1e-9);
    return lu.rank() >= 4;
}

TeleportBranch teleport_branch(const TeleportSetup &setup, const std::vector<CountRecord> &records, bool subtract,
                               bool process) {
    TeleportBranch b;
    tomo::TomoOptions opts;
    opts.subtract_background = subtract;
    std::vector<tomo::ProcessRun> runs;
    for (std::size_t i = 0; i < setup.inputs.size(); ++i) {
        auto recs = subset(records, setup.settings[i]);
        auto est = tomo::qst_mle(recs, setup.settings[i], 2, opts);
        const PureState in = states::qubit(setup.inputs[i]);
        b.fidelity.push_back(state_fidelity(in, est.rho));
        b.outputs.push_back(std::move(est));
        if (process) runs.push_back({in, setup.settings[i], std::move(recs)});
    }
    for (double f : b.fidelity) b.average += f / static_cast<double>(b.fidelity.size());
    if (process) {
        b.process = tomo::qpt_mle(runs, opts);
        b.f_p = process_fidelity(b.process.chi, ProcessMatrix::identity());
        b.f_bar = average_fidelity_from_process(b.f_p);
    }
    return b;
}

}  // namespace

std::vector<tomo::ScanPoint> scan_points(const std::vector<std::pair<std::string, double>> &scan,
                                         const std::vector<CountRecord> &records, bool subtract) {
    std::unordered_map<std::string, const CountRecord *> by_id;
    for (const auto &r : records) by_id.emplace(r.setting_id, &r);
    std::vector<tomo::ScanPoint> pts;
    for (const auto &[id, angle] : scan) {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw InvalidInput("no count record for scan point '" + id + "'");
        const CountRecord &r = *it->second;
        const double c = subtract ? tomo::subtract_background(r).value : static_cast<double>(r.raw);
        pts.push_back({angle, c / r.t_sec});
    }
    return pts;
}

Scalars EntanglementAnalysis::scalars() const {
    Scalars s{{"F_e_raw", fe_raw}};
    if (has_scan) s["V_raw"] = vis_raw.visibility;
    if (has_sub) {
        s["F_e_sub"] = fe_sub;
        if (has_scan) s["V_sub"] = vis_sub.visibility;
    }
    return s;
}

EntanglementAnalysis analyze_entanglement(const EntanglementSetup &setup, const std::vector<CountRecord> &records) {
    EntanglementAnalysis a;
    auto grid = subset(records, setup.grid);
    tomo::TomoOptions raw_opts;
    a.raw = tomo::qst_mle(grid, setup.grid, 4, raw_opts);
    a.fe_raw = fully_entangled_fraction(a.raw.rho).value;
    a.has_scan = !setup.scan.empty();
    if (a.has_scan) a.vis_raw = tomo::fit_visibility(scan_points(setup.scan, records, false));
    if (setup.subtract) {
        tomo::TomoOptions sub_opts;
        sub_opts.subtract_background = true;
        a.sub = tomo::qst_mle(grid, setup.grid, 4, sub_opts);
        a.fe_sub = fully_entangled_fraction(a.sub.rho).value;
        if (a.has_scan) a.vis_sub = tomo::fit_visibility(scan_points(setup.scan, records, true));
        a.has_sub = true;
    }
    return a;
}

Scalars TeleportAnalysis::scalars() const {
    Scalars s;
    auto add = [&](const TeleportBranch &b, const std::string &suffix) {
        for (std::size_t i = 0; i < b.fidelity.size(); ++i) s["F_" + inputs[i] + suffix] = b.fidelity[i];
        s["F_avg" + suffix] = b.average;
        if (has_process) {
            s["F_p" + suffix] = b.f_p;
            s["F_bar" + suffix] = b.f_bar;
        }
    };
    add(raw, "_raw");
    if (has_sub) add(sub, "_sub");
    return s;
}

TeleportAnalysis analyze_teleport(const TeleportSetup &setup, const std::vector<CountRecord> &records) {
    if (setup.inputs.empty() || setup.inputs.size() != setup.settings.size())
        throw InvalidInput("teleport analysis: inputs and settings disagree");
    TeleportAnalysis a;
    a.inputs = setup.inputs;
    a.has_process = independent_inputs(setup.inputs);
    a.raw = teleport_branch(setup, records, false, a.has_process);
    if (setup.subtract) {
        a.sub = teleport_branch(setup, records, true, a.has_process);
        a.has_sub = true;
    }
    return a;
}

}  // namespace ptsim::experiments
