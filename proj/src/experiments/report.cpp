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

#include "ptsim/experiments/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <fstream>

#include "ptsim/errors.hpp"
#include "ptsim/format.hpp"
#include "ptsim/qstate/channel.hpp"

namespace ptsim::experiments {

namespace {

Json value_sigma(double v, const tomo::BootstrapResult &b, const std::string &key) {
    auto it = b.stddev.find(key);
    return {{"value", v}, {"sigma", it == b.stddev.end() ? Json(nullptr) : Json(it->second)}};
}

double sigma_of(const tomo::BootstrapResult &b, const std::string &key) {
    auto it = b.stddev.find(key);
    return it == b.stddev.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
}

Json significance(double value, double bound, double sigma) {
    if (!(sigma > 0.0)) return nullptr;
    return (value - bound) / sigma;
}

Json read_json(const std::filesystem::path &p) {
    std::ifstream in(p);
    if (!in) throw InvalidInput("cannot open report " + p.string());
    return Json::parse(in);
}

void write_text(const std::filesystem::path &p, const std::string &text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InvalidInput("cannot write " + p.string());
    out << text;
}

std::string csv_number(double v) { return format_double(v); }

}  // namespace

std::string tool_version() { return PTSIM_VERSION; }

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

Json provenance_json(const ExperimentConfig &cfg) {
    return {{"tool", "ptsim"},
            {"version", tool_version()},
            {"seed", cfg.noise.seed},
            {"config_hash", hex64(cfg.config_hash)},
            {"scenario", std::string(scenario_name(cfg.scenario))}};
}

Json noise_json(const noise::NoiseParams &p) {
    Json j{{"p_s", p.p_s},
           {"eta_read", p.eta_read},
           {"eta_det_s", p.eta_det_s},
           {"eta_det_as", p.eta_det_as},
           {"tau_phonon", p.tau_phonon},
           {"tau_dephase", p.dephasing_time()},
           {"read_delay", p.read_delay},
           {"rep_rate", p.rep_rate},
           {"sbr", std::isfinite(p.sbr) ? Json(p.sbr) : Json("inf")},
           {"dephasing_mode", std::string(noise::dephasing_name(p.dephasing_mode))},
           {"include_double_pairs", p.include_double_pairs},
           {"path_imbalance", p.path_imbalance},
           {"seed", p.seed}};
    return j;
}

Json counts_json(const std::vector<CountRecord> &counts) {
    Json rows = Json::array();
    for (const auto &r : counts)
        rows.push_back({{"setting_id", r.setting_id},
                        {"hwp3", r.angles.hwp3},
                        {"p2", r.angles.p2},
                        {"hwp5", r.angles.hwp5},
                        {"qwp2", r.angles.qwp2},
                        {"raw", r.raw},
                        {"delayed", r.delayed},
                        {"singles_s", r.singles_s},
                        {"singles_as", r.singles_as},
                        {"t_sec", r.t_sec}});
    return rows;
}

Json scalars_json(const tomo::BootstrapResult &b) {
    Json j = Json::object();
    for (const auto &[k, v] : b.nominal) j[k] = value_sigma(v, b, k);
    return j;
}

namespace {

Json base_report(const ExperimentConfig &cfg) {
    return {{"provenance", provenance_json(cfg)},
            {"noise", noise_json(cfg.noise)},
            {"scenario",
             {{"kind", std::string(scenario_name(cfg.scenario))},
              {"circuit_file", cfg.circuit_file.filename().string()},
              {"integration_time", cfg.integration_time},
              {"shot_noise", cfg.shot_noise},
              {"bootstrap_n", cfg.bootstrap_n},
              {"subtract_background", cfg.subtract_background}}}};
}

Json scan_json(const EntanglementRun &run) {
    Json rows = Json::array();
    for (const auto &[id, angle] : run.setup.scan)
        for (const auto &r : run.counts)
            if (r.setting_id == id)
                rows.push_back({{"angle", angle}, {"raw", r.raw}, {"delayed", r.delayed}, {"t_sec", r.t_sec}});
    return rows;
}

}  // namespace

Json entanglement_report(const ExperimentConfig &cfg, const EntanglementRun &run) {
    Json j = base_report(cfg);
    const auto &a = run.analysis;
    const auto &b = run.bootstrap;
    j["results"] = scalars_json(b);
    j["uu_rate_per_s"] = run.uu_rate;
    Json crit{{"threshold", 0.5},
              {"F_e_raw_sigmas", significance(a.fe_raw, 0.5, sigma_of(b, "F_e_raw"))},
              {"entangled", a.fe_raw > 0.5}};
    if (a.has_sub) crit["F_e_sub_sigmas"] = significance(a.fe_sub, 0.5, sigma_of(b, "F_e_sub"));
    j["entanglement_criterion"] = crit;
    j["matrices"]["rho_raw"] = tomo::matrix_json(a.raw.rho.matrix());
    j["diagnostics"]["qst_raw"] = tomo::diagnostics_json(a.raw.diag);
    if (a.has_scan) j["visibility"]["raw"] = tomo::visibility_json(a.vis_raw);
    if (a.has_sub) {
        j["matrices"]["rho_sub"] = tomo::matrix_json(a.sub.rho.matrix());
        j["diagnostics"]["qst_sub"] = tomo::diagnostics_json(a.sub.diag);
        if (a.has_scan) j["visibility"]["sub"] = tomo::visibility_json(a.vis_sub);
    }
    j["bootstrap"] = tomo::bootstrap_json(b);
    j["scan"] = scan_json(run);
    j["counts"] = counts_json(run.counts);
    return j;
}

Json scan_report(const ExperimentConfig &cfg, const EntanglementRun &run) {
    Json j = base_report(cfg);
    j["results"] = scalars_json(run.bootstrap);
    j["uu_rate_per_s"] = run.uu_rate;
    j["visibility"]["raw"] = tomo::visibility_json(run.analysis.vis_raw);
    if (run.analysis.has_sub) j["visibility"]["sub"] = tomo::visibility_json(run.analysis.vis_sub);
    j["bootstrap"] = tomo::bootstrap_json(run.bootstrap);
    j["scan"] = scan_json(run);
    j["counts"] = counts_json(run.counts);
    return j;
}

Json teleport_report(const ExperimentConfig &cfg, const TeleportRun &run) {
    Json j = base_report(cfg);
    const auto &a = run.analysis;
    const auto &b = run.bootstrap;
    j["scenario"]["bell_outcome"] = cfg.bell_outcome;
    j["scenario"]["input_states"] = cfg.input_states;
    j["results"] = scalars_json(b);
    Json classical{{"bound", 2.0 / 3.0}};
    for (const std::string sfx : {"_raw", "_sub"}) {
        if (sfx == "_sub" && !a.has_sub) continue;
        const auto &br = sfx == "_raw" ? a.raw : a.sub;
        classical["F_avg" + sfx + "_sigmas"] = significance(br.average, 2.0 / 3.0, sigma_of(b, "F_avg" + sfx));
        if (a.has_process) {
            classical["F_bar" + sfx + "_sigmas"] = significance(br.f_bar, 2.0 / 3.0, sigma_of(b, "F_bar" + sfx));
            j["matrices"]["chi" + sfx] = tomo::matrix_json(br.process.chi.chi());
            j["diagnostics"]["qpt" + sfx] = tomo::diagnostics_json(br.process.diag);
            j["diagnostics"]["qpt" + sfx]["tp_residual"] = br.process.tp_residual;
            j["diagnostics"]["qpt" + sfx]["kept_trace"] = br.process.kept_trace;
        }
        for (std::size_t i = 0; i < a.inputs.size(); ++i) {
            j["matrices"]["rho_out" + sfx][a.inputs[i]] = tomo::matrix_json(br.outputs[i].rho.matrix());
            j["diagnostics"]["qst" + sfx][a.inputs[i]] = tomo::diagnostics_json(br.outputs[i].diag);
        }
    }
    j["classical_limit"] = classical;
    Json bell = Json::array();
    for (std::size_t k = 0; k < 4; ++k)
        bell.push_back({{"outcome", run.bell.outcome[k]},
                        {"expected", run.bell.expected[k]},
                        {"count", run.bell.counts[k]},
                        {"frequency", static_cast<double>(run.bell.counts[k]) / static_cast<double>(run.bell.trials)},
                        {"pauli_frame", std::string(k == 0 ? "I" : k == 1 ? "Z" : k == 2 ? "X" : "XZ")}});
    j["bell_statistics"] = {{"trials", run.bell.trials},
                            {"outcomes", bell},
                            {"within_3sigma", run.bell.within_3sigma},
                            {"success_fraction", run.bell.success_fraction}};
    j["timeline"] = Json::array(
        {{{"step", 1}, {"t_ps", 0.0}, {"event", "write pulse: Stokes photon and phonon created"}},
         {{"step", 2}, {"t_ps", cfg.noise.read_delay}, {"event", "read pulse: phonon converted and detected at APD1"}},
         {{"step", 3}, {"t_ps", nullptr}, {"event", "Bell measurement on the Stokes photon at APD2"}}});
    j["bootstrap"] = tomo::bootstrap_json(b);
    j["counts"] = counts_json(run.counts);
    return j;
}

Json calibration_report(const ExperimentConfig &cfg, const CalibrationResult &r) {
    Json j = base_report(cfg);
    j["calibration"] = {{"free", r.free},
                        {"targets", {{"F_e_raw", r.target_fe}, {"V_raw", r.target_vis}}},
                        {"fitted",
                         {{"sbr", std::isfinite(r.params.sbr) ? Json(r.params.sbr) : Json("inf")},
                          {"eta_read", r.params.eta_read}}},
                        {"observables",
                         {{"F_e_raw", r.observables.fe_raw},
                          {"F_e_sub", r.observables.fe_sub},
                          {"V_raw", r.observables.v_raw},
                          {"V_sub", r.observables.v_sub},
                          {"uu_rate_per_s", r.observables.uu_rate}}},
                        {"residuals",
                         {{"F_e_raw", r.observables.fe_raw - r.target_fe}, {"V_raw", r.observables.v_raw - r.target_vis}}},
                        {"residual", r.residual},
                        {"tolerance", kCalibrationTolerance},
                        {"iterations", r.iterations},
                        {"converged", r.converged}};
    j["noise"] = noise_json(r.params);
    return j;
}

void write_report(const std::filesystem::path &dir, const std::string &scenario, const Json &report,
                  const std::vector<CountRecord> *counts) {
    std::filesystem::create_directories(dir);
    write_text(dir / (scenario + "_report.json"), report.dump(2) + "\n");
    if (counts) {
        std::ofstream out(dir / (scenario + "_counts.csv"), std::ios::binary);
        if (!out) throw InvalidInput("cannot write counts CSV in " + dir.string());
        noise::write_counts_csv(out, *counts);
    }
}

void emit_fig3a(const std::filesystem::path &dir, const std::filesystem::path &out) {
    auto p = dir / "entanglement_report.json";
    if (!std::filesystem::exists(p)) p = dir / "visibility_scan_report.json";
    const Json j = read_json(p);
    std::string text = "x,y,yerr\n";
    for (const auto &row : j.at("scan")) {
        const double raw = row.at("raw").get<double>();
        text += csv_number(row.at("angle").get<double>()) + "," + csv_number(raw) + "," + csv_number(std::sqrt(raw)) +
                "\n";
    }
    write_text(out, text);
}

void emit_fig4a(const std::filesystem::path &dir, const std::filesystem::path &out) {
    const Json j = read_json(dir / "teleport_report.json");
    const Json &res = j.at("results");
    std::string text = "x,y,yerr\n";
    auto row = [&](const std::string &x, const std::string &key) {
        if (!res.contains(key)) return;
        const Json &v = res.at(key);
        text += x + "," + csv_number(v.at("value").get<double>()) + "," +
                (v.at("sigma").is_null() ? std::string("nan") : csv_number(v.at("sigma").get<double>())) + "\n";
    };
    for (const std::string sfx : {"raw", "sub"}) {
        for (const auto &l : j.at("scenario").at("input_states")) {
            const std::string label = l.get<std::string>();
            row(label + ":" + sfx, "F_" + label + "_" + sfx);
        }
        row("avg:" + sfx, "F_avg_" + sfx);
    }
    write_text(out, text);
}

}  // namespace ptsim::experiments
