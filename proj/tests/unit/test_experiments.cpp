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

#include <gtest/gtest.h>
#include <omp.h>
#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "common.hpp"
#include "ptsim/errors.hpp"
#include "ptsim/experiments/analysis.hpp"
#include "ptsim/experiments/config.hpp"
#include "ptsim/experiments/plan.hpp"
#include "ptsim/experiments/report.hpp"
#include "ptsim/experiments/scenarios.hpp"
#include "ptsim/optics/compile.hpp"
#include "ptsim/qstate/channel.hpp"
#include "ptsim/qstate/fidelity.hpp"
#include "ptsim/qstate/ops.hpp"

using namespace ptsim;
using namespace ptsim::experiments;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = PTSIM_CONFIG_DIR;

ExperimentConfig config(const std::string &name) { return load_config(kConfigs / name); }

fs::path scratch(const std::string &name) {
    fs::path p = fs::temp_directory_path() / ("ptsim_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_tool(const std::string &args) {
    const std::string cmd = std::string(PTSIM_TOOL) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char *kMinimal = R"([scenario]
kind = "entanglement"
circuit_file = "circuit.oct"
)";

// Mean-count teleport analysis without the bootstrap.
TeleportAnalysis teleport_mean(ExperimentConfig cfg) {
    const optics::Circuit c = load_two_arm_circuit(cfg);
    TeleportSetup setup;
    setup.inputs = cfg.input_states;
    setup.subtract = cfg.subtract_background;
    std::vector<PlannedSetting> all;
    for (const auto &in : cfg.input_states) {
        auto plan = teleport_plan(c, in, cfg.bell_outcome);
        setup.settings.push_back(logical_settings(plan));
        all.insert(all.end(), plan.begin(), plan.end());
    }
    return analyze_teleport(setup, simulate_counts(c, all, cfg));
}

}  // namespace

TEST(Config, ParsesDefaultsAndResolvesPaths) {
    auto cfg = parse_config(kMinimal, "/base", "t.toml");
    EXPECT_EQ(cfg.scenario, Scenario::ENTANGLEMENT);
    EXPECT_EQ(cfg.circuit_file, fs::path("/base/circuit.oct"));
    EXPECT_EQ(cfg.output_dir, fs::path("/base/out"));
    EXPECT_EQ(cfg.input_states.size(), 6u);
    EXPECT_EQ(cfg.bootstrap_n, 500);
    EXPECT_TRUE(cfg.subtract_background);

    auto rel = parse_config(std::string(kMinimal) + "output_dir = \"../res\"\n", "configs", "t.toml");
    EXPECT_EQ(rel.output_dir, fs::path("res"));
}

TEST(Config, RejectsUnknownKeysWithLocation) {
    try {
        parse_config(std::string(kMinimal) + "\n[noise]\np_s = 0.1\nbogus = 3\n", "/b", "t.toml");
        FAIL() << "accepted unknown key";
    } catch (const ConfigError &e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("t.toml:7"), std::string::npos) << msg;
        EXPECT_NE(msg.find("bogus"), std::string::npos) << msg;
    }
    EXPECT_THROW(parse_config(std::string(kMinimal) + "[extra]\nx = 1\n", "/b", "t.toml"), ConfigError);
    EXPECT_THROW(parse_config("[scenario]\ncircuit_file = \"c.oct\"\n", "/b", "t.toml"), ConfigError);
    EXPECT_THROW(parse_config(std::string(kMinimal) + "kind2 = 1\n", "/b", "t.toml"), ConfigError);
    EXPECT_THROW(parse_config("[scenario]\nkind = \"nonsense\"\ncircuit_file = \"c\"\n", "/b", "t.toml"),
                 ConfigError);
}

TEST(Config, RejectsBadValues) {
    auto bad = [](const std::string &extra) {
        return [extra] { parse_config(std::string(kMinimal) + extra, "/b", "t.toml"); };
    };
    EXPECT_THROW(bad("input_states = [\"H\", \"Q\"]\n")(), ConfigError);
    EXPECT_THROW(bad("input_states = []\n")(), ConfigError);
    EXPECT_THROW(bad("bell_outcome = \"phi0\"\n")(), ConfigError);
    EXPECT_THROW(bad("integration_time = -1.0\n")(), ConfigError);
    EXPECT_THROW(bad("\n[analysis]\nbootstrap_n = 50\n")(), ConfigError);
    EXPECT_THROW(bad("\n[analysis]\ncalibrate_free = [\"p_s\"]\n")(), ConfigError);
    EXPECT_THROW(bad("\n[noise]\np_s = 1.5\n")(), ConfigError);
    EXPECT_THROW(bad("\n[noise]\np_s = \"high\"\n")(), ConfigError);
}

TEST(Config, TomlRoundTrip) {
    auto cfg = config("calibrated_teleport.toml");
    auto again = parse_config(to_toml(cfg), "/", "round");
    EXPECT_EQ(again.scenario, cfg.scenario);
    EXPECT_EQ(again.circuit_file, cfg.circuit_file);
    EXPECT_EQ(again.input_states, cfg.input_states);
    EXPECT_EQ(again.integration_time, cfg.integration_time);
    EXPECT_EQ(again.noise.sbr, cfg.noise.sbr);
    EXPECT_EQ(again.noise.eta_det_s, cfg.noise.eta_det_s);
    EXPECT_EQ(again.noise.seed, cfg.noise.seed);
    EXPECT_EQ(again.bootstrap_n, cfg.bootstrap_n);
}

TEST(SettingIds, ParseGridAndTeleportIds) {
    auto ent = parse_setting_id("ent:H:+");
    ASSERT_TRUE(ent);
    EXPECT_EQ(ent->group, "ent");
    EXPECT_EQ(ent->setting.povm_element.dim(), 4);
    auto tel = parse_setting_id("tel:L:phi+:R");
    ASSERT_TRUE(tel);
    EXPECT_EQ(tel->input, "L");
    EXPECT_EQ(tel->setting.povm_element.dim(), 2);
    EXPECT_FALSE(parse_setting_id("vis:045.0"));
}

TEST(Entanglement, NoiseFreeIsPerfect) {
    auto run = run_entanglement(config("noise_free_entanglement.toml"));
    EXPECT_NEAR(run.analysis.fe_raw, 1.0, 1e-6);
    EXPECT_NEAR(run.analysis.fe_sub, 1.0, 1e-6);
    EXPECT_NEAR(run.analysis.vis_raw.visibility, 1.0, 1e-6);
    EXPECT_NEAR(run.analysis.vis_sub.visibility, 1.0, 1e-6);
    EXPECT_TRUE(run.analysis.raw.diag.converged);
    EXPECT_EQ(run.counts.size(), 36u + run.setup.scan.size());
}

TEST(Entanglement, CalibratedMatchesReferenceBands) {
    auto run = run_entanglement(config("calibrated_entanglement.toml"));
    const auto &a = run.analysis;
    EXPECT_GE(a.fe_raw, 0.79);
    EXPECT_LE(a.fe_raw, 0.83);
    EXPECT_GE(a.fe_sub, 0.88);
    EXPECT_NEAR(run.uu_rate, 8.0, 0.05);
    // background removal never hurts beyond one bootstrap sigma
    EXPECT_GE(a.fe_sub, a.fe_raw - run.bootstrap.stddev.at("F_e_sub"));
    EXPECT_GE(a.vis_sub.visibility, a.vis_raw.visibility - run.bootstrap.stddev.at("V_sub"));
    EXPECT_GE(run.bootstrap.stddev.at("F_e_raw"), 0.008);
    EXPECT_LE(run.bootstrap.stddev.at("F_e_raw"), 0.025);
}

TEST(Entanglement, SbrLimitRawEqualsSubtracted) {
    auto run = run_entanglement(config("sbr_limit_entanglement.toml"));
    const double sigma = std::max(run.bootstrap.stddev.at("F_e_raw"), run.bootstrap.stddev.at("F_e_sub"));
    EXPECT_LE(std::abs(run.analysis.fe_raw - run.analysis.fe_sub), sigma);
}

TEST(Teleport, NoiseFreeIdentityForAllInputs) {
    auto a = teleport_mean(config("noise_free_teleport.toml"));
    ASSERT_EQ(a.raw.fidelity.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(a.raw.fidelity[i], 1.0, 1e-6) << a.inputs[i];
    ASSERT_TRUE(a.has_process);
    EXPECT_NEAR(a.raw.f_p, 1.0, 1e-6);
    EXPECT_NEAR(a.sub.f_p, 1.0, 1e-6);
}

TEST(Teleport, PhiPlusInputHGivesUpperPath) {
    auto cfg = config("noise_free_teleport.toml");
    cfg.input_states = {"H"};
    auto a = teleport_mean(cfg);
    // logical |H> of the phonon is the upper path |U>
    const CMatrix rho = a.raw.outputs[0].rho.matrix();
    EXPECT_NEAR(rho(0, 0).real(), 1.0, 1e-6);
    EXPECT_FALSE(a.has_process);
}

TEST(Teleport, PhiMinusPlusInputNeedsZCorrection) {
    auto cfg = config("noise_free_teleport.toml");
    cfg.input_states = {"+"};
    cfg.bell_outcome = "phi-";
    auto a = teleport_mean(cfg);
    EXPECT_NEAR(a.raw.fidelity[0], 1.0, 1e-6);
    // undo the frame: the uncorrected phonon state is |U> - |L>
    const CMatrix z = pauli_frame("phi-").matrix();
    const CMatrix uncorrected = z.adjoint() * a.raw.outputs[0].rho.matrix() * z;
    const CMatrix minus = states::qubit("-").projector().matrix();
    EXPECT_NEAR((uncorrected * minus).trace().real(), 1.0, 1e-6);
}

TEST(Teleport, AllOutcomesCorrectToIdentity) {
    for (const char *outcome : {"phi+", "phi-", "psi+", "psi-"}) {
        auto cfg = config("noise_free_teleport.toml");
        cfg.bell_outcome = outcome;
        auto a = teleport_mean(cfg);
        EXPECT_NEAR(a.raw.f_p, 1.0, 1e-6) << outcome;
    }
}

TEST(Teleport, CalibratedMatchesReferenceBands) {
    auto cfg = config("calibrated_teleport.toml");
    auto run = run_teleport(cfg);
    const auto &a = run.analysis;
    EXPECT_GE(a.raw.average, 0.81);
    EXPECT_LE(a.raw.average, 0.85);
    EXPECT_GE(a.sub.average, 0.92);
    EXPECT_LE(a.sub.average, 0.96);
    EXPECT_GE(a.sub.f_bar, 0.89);
    EXPECT_LE(a.sub.f_bar, 0.92);
    // same-report identity
    EXPECT_NEAR(a.raw.f_bar, average_fidelity_from_process(a.raw.f_p), 1e-12);
    EXPECT_NEAR(a.sub.f_bar, average_fidelity_from_process(a.sub.f_p), 1e-12);
    auto report = teleport_report(cfg, run);
    const double fp = report["results"]["F_p_sub"]["value"].get<double>();
    const double fbar = report["results"]["F_bar_sub"]["value"].get<double>();
    EXPECT_NEAR(fbar, average_fidelity_from_process(fp), 1e-12);
    for (std::size_t i = 0; i < a.inputs.size(); ++i)
        EXPECT_GE(a.sub.fidelity[i], a.raw.fidelity[i] - run.bootstrap.stddev.at("F_" + a.inputs[i] + "_sub"))
            << a.inputs[i];
}

TEST(BellStatistics, NoiseFreeOutcomesAreUniform) {
    auto cfg = config("noise_free_teleport.toml");
    auto b = bell_outcome_statistics(cfg);
    EXPECT_EQ(b.trials, 100000);
    long total = 0;
    for (int k = 0; k < 4; ++k) {
        total += b.counts[k];
        EXPECT_NEAR(b.expected[k], 0.25, 1e-9) << b.outcome[k];
        const double sigma = std::sqrt(b.trials * 0.25 * 0.75);
        EXPECT_LE(std::abs(b.counts[k] - 0.25 * b.trials), 3.0 * sigma) << b.outcome[k];
    }
    EXPECT_EQ(total, b.trials);
    EXPECT_NEAR(b.success_fraction, 0.25, 1e-9);
    EXPECT_TRUE(b.within_3sigma);
    auto again = bell_outcome_statistics(cfg);
    EXPECT_EQ(again.counts, b.counts);
}

TEST(BellStatistics, HarnessOutcomesFormAProjectiveMeasurement) {
    const std::vector<std::string> outcomes{"phi+", "phi-", "psi+", "psi-"};
    CMatrix sum = CMatrix::Zero(4, 4);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto &si = bell_setting(outcomes[i]);
        const CMatrix a = optics::bell_projector(si.hwp3, si.p2).matrix();
        EXPECT_NEAR(a.trace().real(), 1.0, 1e-12) << outcomes[i];
        EXPECT_LT((a * a - a).cwiseAbs().maxCoeff(), 1e-12) << outcomes[i];
        for (std::size_t j = i + 1; j < outcomes.size(); ++j) {
            const auto &sj = bell_setting(outcomes[j]);
            const CMatrix b = optics::bell_projector(sj.hwp3, sj.p2).matrix();
            EXPECT_LT((a * b).cwiseAbs().maxCoeff(), 1e-12) << outcomes[i] << " " << outcomes[j];
        }
        sum += a;
        const CMatrix p = pauli_frame(outcomes[i]).matrix();
        EXPECT_LT((p * p.adjoint() - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12) << outcomes[i];
    }
    EXPECT_LT((sum - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Calibration, PerfectTargetsDriveSbrToUpperBound) {
    // noise-free limit: only accidentals stand between the model and F_e = 1
    auto cfg = config("calibrate.toml");
    cfg.noise = config("noise_free_entanglement.toml").noise;
    cfg.noise.sbr = 10.0;
    cfg.target_fe = 1.0;
    cfg.target_vis = 1.0;
    auto r = calibrate_noise(cfg);
    EXPECT_GE(std::log10(r.params.sbr * r.params.eta_read), std::log10(kSbrBounds[1] * kEtaReadBounds[0]));
    EXPECT_LT(r.residual, 1e-8);
    EXPECT_TRUE(r.converged);
}

TEST(Calibration, ReferenceTargetsConverge) {
    auto cfg = config("calibrate.toml");
    auto r = calibrate_noise(cfg);
    EXPECT_TRUE(r.converged);
    EXPECT_LT(r.residual, 1e-4);
    EXPECT_NEAR(r.observables.uu_rate, 8.0, 0.05);
    // deterministic
    auto again = calibrate_noise(cfg);
    EXPECT_EQ(again.params.sbr, r.params.sbr);
    EXPECT_EQ(again.params.eta_read, r.params.eta_read);
}

TEST(Calibration, GridScanFindsConsistentMinimum) {
    // independent oracle: brute-force scan of the analytic model
    auto cfg = config("calibrate.toml");
    const AnalyticModel model(load_two_arm_circuit(cfg), cfg);
    double best = 1e9;
    for (int i = 0; i <= 60; ++i) {
        auto p = cfg.noise;
        p.sbr = std::pow(10.0, 3.0 * i / 60.0);
        auto o = model.evaluate(p);
        best = std::min(best, std::pow(o.fe_raw - 0.81, 2) + std::pow(o.v_raw - 0.746, 2));
    }
    EXPECT_LT(best, 1e-4);
}

TEST(Calibration, InfeasibleTargetsReportNonConvergence) {
    auto cfg = config("calibrate.toml");
    cfg.target_fe = 0.99;
    cfg.target_vis = 0.3;
    auto r = calibrate_noise(cfg);
    EXPECT_FALSE(r.converged);
    EXPECT_GT(r.residual, 1e-4);
    auto report = calibration_report(cfg, r);
    EXPECT_FALSE(report["calibration"]["converged"].get<bool>());
    EXPECT_TRUE(report["calibration"].contains("residuals"));
}

TEST(Calibration, SbrSweepIsStrictlyMonotone) {
    auto cfg = config("calibrate.toml");
    const AnalyticModel model(load_two_arm_circuit(cfg), cfg);
    double fe = 0.0, v = 0.0;
    for (double sbr : {1.0, 3.0, 10.0, 30.0, 100.0}) {
        auto p = cfg.noise;
        p.sbr = sbr;
        auto o = model.evaluate(p);
        EXPECT_GT(o.fe_raw, fe) << sbr;
        EXPECT_GT(o.v_raw, v) << sbr;
        fe = o.fe_raw;
        v = o.v_raw;
    }
}

TEST(Reports, ByteIdenticalAcrossRunsAndThreadCounts) {
    auto cfg = config("noise_free_teleport.toml");
    cfg.noise.p_s = 0.05;
    cfg.noise.sbr = 20.0;
    cfg.shot_noise = true;
    cfg.integration_time = 50.0;
    const int threads = omp_get_max_threads();
    std::vector<std::string> dumps;
    for (int n : {1, 4, 1}) {
        omp_set_num_threads(n);
        auto run = run_teleport(cfg);
        fs::path dir = scratch("det" + std::to_string(dumps.size()));
        write_report(dir, "teleport", teleport_report(cfg, run), &run.counts);
        dumps.push_back(slurp(dir / "teleport_report.json") + slurp(dir / "teleport_counts.csv"));
    }
    omp_set_num_threads(threads);
    EXPECT_EQ(dumps[0], dumps[1]);
    EXPECT_EQ(dumps[0], dumps[2]);
}

TEST(Reports, EveryScalarHasAnErrorBar) {
    auto cfg = config("noise_free_entanglement.toml");
    auto run = run_entanglement(cfg);
    auto report = entanglement_report(cfg, run);
    ASSERT_FALSE(report["results"].empty());
    for (const auto &[k, v] : report["results"].items()) {
        EXPECT_TRUE(v.contains("value")) << k;
        EXPECT_TRUE(v.contains("sigma")) << k;
    }
    EXPECT_EQ(report["provenance"]["seed"].get<std::uint64_t>(), cfg.noise.seed);
    EXPECT_EQ(report["provenance"]["config_hash"].get<std::string>(), hex64(cfg.config_hash));
}

TEST(Reports, FigureCsvsArePlotReady) {
    auto cfg = config("noise_free_teleport.toml");
    fs::path dir = scratch("fig");
    auto tel = run_teleport(cfg);
    write_report(dir, "teleport", teleport_report(cfg, tel), &tel.counts);
    auto ecfg = config("noise_free_entanglement.toml");
    auto ent = run_entanglement(ecfg);
    write_report(dir, "entanglement", entanglement_report(ecfg, ent), &ent.counts);
    emit_fig3a(dir, dir / "fig3a.csv");
    emit_fig4a(dir, dir / "fig4a.csv");
    for (const char *name : {"fig3a.csv", "fig4a.csv"}) {
        std::istringstream in(slurp(dir / name));
        std::string line;
        std::getline(in, line);
        EXPECT_EQ(line, "x,y,yerr") << name;
        int rows = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            EXPECT_EQ(std::count(line.begin(), line.end(), ','), 2) << name << ": " << line;
            ++rows;
        }
        EXPECT_GT(rows, 0) << name;
    }
}

TEST(Cli, ExitCodes) {
    fs::path dir = scratch("cli");
    EXPECT_EQ(run_tool("run " + (kConfigs / "noise_free_teleport.toml").string() + " --output " + dir.string()), 0);
    EXPECT_TRUE(fs::exists(dir / "teleport_report.json"));

    std::ofstream(dir / "bad.toml") << "[scenario]\nkind = \"teleport\"\nwhat = 1\n";
    EXPECT_EQ(run_tool("run " + (dir / "bad.toml").string()), 2);
    EXPECT_EQ(run_tool("run " + (dir / "missing.toml").string()), 2);
    EXPECT_EQ(run_tool("calibrate " + (kConfigs / "calibrate.toml").string() +
                       " --target-fe 0.99 --target-vis 0.3 --output " + dir.string()),
              3);
    EXPECT_TRUE(fs::exists(dir / "calibration_report.json"));
    EXPECT_EQ(run_tool("report " + dir.string() + " --emit " + (dir / "fig4a.csv").string()), 0);
    EXPECT_EQ(run_tool("frobnicate"), 2);
}

TEST(Cli, ExceptionMapping) {
    using tools::guarded;
    EXPECT_EQ(guarded([] { return 0; }), 0);
    EXPECT_EQ(guarded([]() -> int { throw ConfigError("x"); }), 2);
    EXPECT_EQ(guarded([]() -> int { throw InvalidInput("x"); }), 2);
    EXPECT_EQ(guarded([]() -> int { throw ConvergenceError("x"); }), 3);
    EXPECT_EQ(guarded([]() -> int { throw PhysicalityError("x"); }), 4);
    EXPECT_EQ(guarded([]() -> int { throw std::runtime_error("x"); }), 1);
}
