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

#include <filesystem>
#include <fstream>
#include <iostream>

#include "common.hpp"
#include "ptsim/experiments/report.hpp"
#include "ptsim/format.hpp"

using namespace ptsim;
using namespace ptsim::experiments;
namespace fs = std::filesystem;

namespace {

std::string fmt(const tomo::BootstrapResult &b, const std::string &key) {
    auto v = b.nominal.find(key);
    if (v == b.nominal.end()) return "n/a";
    auto s = b.stddev.find(key);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f +- %.4f", v->second, s == b.stddev.end() ? 0.0 : s->second);
    return buf;
}

bool all_converged(const EntanglementRun &r) {
    if (r.setup.grid.empty()) return true;
    return r.analysis.raw.diag.converged && (!r.analysis.has_sub || r.analysis.sub.diag.converged);
}

bool all_converged(const TeleportRun &r) {
    auto branch = [&](const TeleportBranch &b) {
        for (const auto &o : b.outputs)
            if (!o.diag.converged) return false;
        return !r.analysis.has_process || b.process.diag.converged;
    };
    return branch(r.analysis.raw) && (!r.analysis.has_sub || branch(r.analysis.sub));
}

int run_config(const ExperimentConfig &cfg, const fs::path &out) {
    switch (cfg.scenario) {
    case Scenario::ENTANGLEMENT: {
        auto run = run_entanglement(cfg);
        write_report(out, "entanglement", entanglement_report(cfg, run), &run.counts);
        for (const char *k : {"F_e_raw", "F_e_sub", "V_raw", "V_sub"})
            std::cout << k << " = " << fmt(run.bootstrap, k) << "\n";
        std::cout << "report: " << (out / "entanglement_report.json").string() << "\n";
        return all_converged(run) ? tools::kOk : tools::kNonConvergence;
    }
    case Scenario::VISIBILITY_SCAN: {
        auto run = run_visibility_scan(cfg);
        write_report(out, "visibility_scan", scan_report(cfg, run), &run.counts);
        for (const char *k : {"V_raw", "V_sub"}) std::cout << k << " = " << fmt(run.bootstrap, k) << "\n";
        return tools::kOk;
    }
    case Scenario::TELEPORT: {
        auto run = run_teleport(cfg);
        write_report(out, "teleport", teleport_report(cfg, run), &run.counts);
        for (const auto &[k, v] : run.bootstrap.nominal) std::cout << k << " = " << fmt(run.bootstrap, k) << "\n";
        std::cout << "report: " << (out / "teleport_report.json").string() << "\n";
        return all_converged(run) ? tools::kOk : tools::kNonConvergence;
    }
    case Scenario::CALIBRATE: {
        auto r = calibrate_noise(cfg);
        write_report(out, "calibration", calibration_report(cfg, r), nullptr);
        std::ofstream(out / "calibrated_noise.toml", std::ios::binary) << noise_toml(r.params);
        std::cout << "sbr = " << format_double(r.params.sbr) << "\neta_read = " << format_double(r.params.eta_read)
                  << "\nF_e_raw = " << format_double(r.observables.fe_raw)
                  << "\nV_raw = " << format_double(r.observables.v_raw) << "\nresidual = " << format_double(r.residual)
                  << "\niterations = " << r.iterations << "\nconverged = " << (r.converged ? "true" : "false") << "\n";
        if (!r.converged) std::cerr << "calibration did not converge; best-so-far written\n";
        return r.converged ? tools::kOk : tools::kNonConvergence;
    }
    }
    return tools::kOther;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"ptsim: photon-phonon teleportation simulator"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);

    std::string config_path, noise_path, output;
    auto *run = app.add_subcommand("run", "Run the scenario of a TOML config");
    run->add_option("config", config_path, "config file")->required()->check(CLI::ExistingFile);
    run->add_option("--noise", noise_path, "take [noise] from this file")->check(CLI::ExistingFile);
    run->add_option("--output", output, "override output_dir");

    double target_fe = 0.81, target_vis = 0.746;
    std::string cal_config;
    auto *cal = app.add_subcommand("calibrate", "Fit sbr and eta_read to raw F_e and visibility");
    cal->add_option("config", cal_config, "config file")->required()->check(CLI::ExistingFile);
    cal->add_option("--target-fe", target_fe, "raw entanglement fidelity target")->check(CLI::Range(0.0, 1.0));
    cal->add_option("--target-vis", target_vis, "raw visibility target")->check(CLI::Range(0.0, 1.0));
    cal->add_option("--output", output, "override output_dir");

    std::string report_dir;
    std::vector<std::string> emit;
    auto *rep = app.add_subcommand("report", "Emit plot-ready CSV from reports");
    rep->add_option("dir", report_dir, "directory holding *_report.json")->required()->check(CLI::ExistingDirectory);
    rep->add_option("--emit", emit, "fig3a.csv and/or fig4a.csv")->required();

    if (int rc = tools::parse_cli(app, argc, argv)) return rc < 0 ? 0 : rc;

    return tools::guarded([&]() -> int {
        if (*run) {
            ExperimentConfig cfg = load_config(config_path);
            if (!noise_path.empty()) apply_noise_file(cfg, noise_path);
            if (!output.empty()) cfg.output_dir = output;
            return run_config(cfg, cfg.output_dir);
        }
        if (*cal) {
            ExperimentConfig cfg = load_config(cal_config);
            cfg.scenario = Scenario::CALIBRATE;
            cfg.target_fe = target_fe;
            cfg.target_vis = target_vis;
            if (!output.empty()) cfg.output_dir = output;
            return run_config(cfg, cfg.output_dir);
        }
        for (const auto &name : emit) {
            fs::path out(name);
            if (out.is_relative()) out = fs::path(report_dir) / out;
            const std::string stem = out.filename().string();
            if (stem.find("fig3a") != std::string::npos)
                emit_fig3a(report_dir, out);
            else if (stem.find("fig4a") != std::string::npos)
                emit_fig4a(report_dir, out);
            else
                throw InvalidInput("unknown figure '" + name + "', expected fig3a*.csv or fig4a*.csv");
            std::cout << out.string() << "\n";
        }
        return tools::kOk;
    });
}
