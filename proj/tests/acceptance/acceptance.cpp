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

// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ptsim/experiments/config.hpp"
#include "ptsim/experiments/plan.hpp"
#include "ptsim/experiments/scenarios.hpp"
#include "ptsim/kernels/fef_sampling.hpp"
#include "ptsim/optics/compile.hpp"
#include "ptsim/qstate/channel.hpp"
#include "ptsim/qstate/fidelity.hpp"
#include "ptsim/qstate/ops.hpp"
#include "ptsim/qstate/random.hpp"
#include "ptsim/rng.hpp"
#include "ptsim/tomo/state.hpp"

using namespace ptsim;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kConfigs = PTSIM_CONFIG_DIR;
const std::string kTool = PTSIM_TOOL;

// Pinned tolerances.
constexpr double kNoiseFreeTol = 1e-6;
constexpr double kNoiseFreeSeconds = 10.0;
constexpr double kIdentityTarget = 0.906;
constexpr double kIdentityTol = 5e-4;
constexpr double kFeSubBand[2] = {0.87, 0.92};
constexpr double kAvgRawBand[2] = {0.81, 0.85};
constexpr double kAvgSubBand[2] = {0.92, 0.96};
constexpr double kFbarBand[2] = {0.88, 0.93};
constexpr double kClassicalSigmas = 10.0;
constexpr double kCampaignSeconds = 600.0;
constexpr int kQstStates = 200;
constexpr double kCountsPerSetting = 1e4;
constexpr double kTdMedian = 0.02;
constexpr double kTdP95 = 0.05;
constexpr double kPauliFp = 0.99;
constexpr int kFefStates = 100;
constexpr std::uint64_t kFefSamples = 100000;
constexpr double kFefTol = 1e-3;
constexpr double kWernerTol = 1e-6;
constexpr double kBellTol = 1e-12;
constexpr double kBellSigmas = 3.0;
constexpr int kScalingRepeats = 5;
constexpr double kScalingRatio[2] = {2.0 * 0.7, 2.0 * 1.3};

struct Line {
    int id;
    bool pass;
    std::string detail;
};

std::string fmt(const char *f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

bool in(double v, const double band[2]) { return v >= band[0] && v <= band[1]; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int sh(const std::string &args, const std::string &env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + kTool + " " + args + " >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

json load(const fs::path &p) {
    std::ifstream in(p);
    return json::parse(in);
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string &name) {
    fs::path p = fs::temp_directory_path() / ("ptsim_accept_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

double value(const json &r, const std::string &k) { return r.at("results").at(k).at("value").get<double>(); }
double sigma(const json &r, const std::string &k) { return r.at("results").at(k).at("sigma").get<double>(); }

Line noise_free() {
    const fs::path out = scratch("c1");
    auto t0 = std::chrono::steady_clock::now();
    int rc = sh("run " + (kConfigs / "noise_free_entanglement.toml").string() + " --output " + out.string());
    rc |= sh("run " + (kConfigs / "noise_free_teleport.toml").string() + " --output " + out.string());
    const double dt = seconds_since(t0);
    if (rc != 0) return {1, false, "ptsim run exited nonzero"};
    const json e = load(out / "entanglement_report.json");
    const json t = load(out / "teleport_report.json");
    double worst = 0.0;
    for (const char *k : {"F_e_raw", "V_raw"}) worst = std::max(worst, std::abs(value(e, k) - 1.0));
    for (auto label : states::six_labels())
        worst = std::max(worst, std::abs(value(t, "F_" + std::string(label) + "_raw") - 1.0));
    worst = std::max(worst, std::abs(value(t, "F_p_raw") - 1.0));
    const bool ok = worst <= kNoiseFreeTol && dt < kNoiseFreeSeconds;
    return {1, ok, "max |1 - F| = " + fmt("%.2e", worst) + ", runtime " + fmt("%.1f", dt) + " s"};
}

Line identity() {
    const double f = average_fidelity_from_process(0.859);
    const double d = average_fidelity_from_process(0.25);
    const bool ok = std::abs(f - kIdentityTarget) <= kIdentityTol && d == 0.5;
    return {2, ok, "F(0.859) = " + fmt("%.6f", f) + ", F(0.25) = " + fmt("%.17g", d)};
}

Line campaign() {
    const fs::path out = scratch("c3");
    auto t0 = std::chrono::steady_clock::now();
    const fs::path cal = out / "cal";
    int rc = sh("calibrate " + (kConfigs / "calibrate.toml").string() + " --target-fe 0.81 --target-vis 0.746 --output " +
                cal.string());
    if (rc != 0) return {3, false, "calibrate exited " + std::to_string(rc)};
    const std::string noise = " --noise " + (cal / "calibrated_noise.toml").string() + " --output " + out.string();
    rc = sh("run " + (kConfigs / "calibrated_entanglement.toml").string() + noise);
    rc |= sh("run " + (kConfigs / "calibrated_teleport.toml").string() + noise);
    const double dt = seconds_since(t0);
    if (rc != 0) return {3, false, "campaign run exited nonzero"};
    const json e = load(out / "entanglement_report.json");
    const json t = load(out / "teleport_report.json");
    const double fe = value(e, "F_e_sub"), raw = value(t, "F_avg_raw"), sub = value(t, "F_avg_sub");
    const double fbar = value(t, "F_bar_sub"), margin = (fbar - 2.0 / 3.0) / sigma(t, "F_bar_sub");
    const bool ok = in(fe, kFeSubBand) && in(raw, kAvgRawBand) && in(sub, kAvgSubBand) && in(fbar, kFbarBand) &&
                    margin >= kClassicalSigmas && dt < kCampaignSeconds;
    return {3, ok,
            "F_e_sub " + fmt("%.4f", fe) + ", avg raw " + fmt("%.4f", raw) + ", avg sub " + fmt("%.4f", sub) +
                ", Fbar " + fmt("%.4f", fbar) + " (" + fmt("%.1f", margin) + " sigma above 2/3), runtime " +
                fmt("%.0f", dt) + " s"};
}

std::vector<tomo::CountRecord> poisson_counts(const CMatrix &rho, const std::vector<tomo::MeasurementSetting> &settings,
                                              std::uint64_t seed) {
    std::vector<tomo::CountRecord> out;
    for (const auto &s : settings) {
        const double mean = kCountsPerSetting * std::max(0.0, (rho * s.povm_element.matrix()).trace().real());
        tomo::CountRecord r;
        r.setting_id = s.setting_id;
        Engine e = make_engine(seed, s.setting_id);
        r.raw = mean > 0 ? std::poisson_distribution<std::uint64_t>(mean)(e) : 0;
        out.push_back(r);
    }
    return out;
}

Line tomography() {
    const auto grid = tomo::local_grid(2);
    Engine rng = make_engine(4, "acceptance-qst");
    std::vector<double> td;
    for (int k = 0; k < kQstStates; ++k) {
        const DensityMatrix rho = ginibre_state(rng, 4);
        const auto est = tomo::qst_mle(poisson_counts(rho.matrix(), grid, 1000 + static_cast<std::uint64_t>(k)), grid, 4);
        td.push_back(est.rho.trace_distance(rho));
    }
    std::sort(td.begin(), td.end());
    const double median = 0.5 * (td[kQstStates / 2 - 1] + td[kQstStates / 2]);
    const double p95 = td[static_cast<std::size_t>(std::ceil(0.95 * kQstStates)) - 1];

    double worst_fp = 1.0;
    const std::vector<Operator> paulis{gates::I2(), gates::X(), gates::Y(), gates::Z()};
    for (std::size_t p = 0; p < paulis.size(); ++p) {
        const ProcessMatrix truth = ProcessMatrix::from_unitary(paulis[p]);
        std::vector<tomo::ProcessRun> runs;
        for (auto label : states::six_labels()) {
            tomo::ProcessRun run;
            run.input = states::qubit(label);
            run.settings = tomo::local_grid(1, std::string(label) + "/");
            const CMatrix out = apply_chi_raw(truth.chi(), run.input.projector().matrix());
            run.records = poisson_counts(out, run.settings, derive_seed(50 + p, label));
            runs.push_back(run);
        }
        worst_fp = std::min(worst_fp, process_fidelity(tomo::qpt_mle(runs).chi, truth));
    }
    const bool ok = median <= kTdMedian && p95 <= kTdP95 && worst_fp >= kPauliFp;
    return {4, ok,
            "trace distance median " + fmt("%.4f", median) + ", p95 " + fmt("%.4f", p95) + ", min Pauli F_p " +
                fmt("%.5f", worst_fp)};
}

Line fef() {
    Engine rng = make_engine(5, "acceptance-fef");
    double worst = 0.0, lowest = 1.0;
    int misses = 0;
    std::string dense;
    for (int k = 0; k < kFefStates; ++k) {
        const DensityMatrix rho = ginibre_state(rng, 4);
        const double f = fully_entangled_fraction(rho).value;
        const auto seed = 2000 + static_cast<std::uint64_t>(k);
        const double oracle = kernels::fef_sampling_omp(rho.matrix(), kFefSamples, seed).value;
        worst = std::max(worst, std::abs(f - oracle));
        lowest = std::min(lowest, f - oracle);
        if (std::abs(f - oracle) > kFefTol) {
            // informational: the same oracle at 10x the samples
            ++misses;
            dense += ", state " + std::to_string(k) + " gap at 1e6 samples " +
                     fmt("%.1e", f - kernels::fef_sampling_omp(rho.matrix(), 10 * kFefSamples, seed).value);
        }
    }
    double werner = 0.0;
    for (double p : {0.0, 0.25, 0.5, 0.8, 1.0})
        werner = std::max(werner, std::abs(fully_entangled_fraction(states::werner(p)).value - (p + (1.0 - p) / 4.0)));
    const bool ok = worst <= kFefTol && werner <= kWernerTol;
    return {5, ok,
            "max |optimizer - oracle| " + fmt("%.2e", worst) + " (" + std::to_string(misses) + "/" +
                std::to_string(kFefStates) + " above tol, min optimizer - oracle " + fmt("%.1e", lowest) + dense +
                "), Werner max error " + fmt("%.2e", werner)};
}

Line bell() {
    const std::vector<std::string> names{"phi+", "phi-", "psi+", "psi-"};
    double err = 0.0;
    CMatrix sum = CMatrix::Zero(4, 4);
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto &si = experiments::bell_setting(names[i]);
        const CMatrix a = optics::bell_projector(si.hwp3, si.p2).matrix();
        err = std::max(err, (a * a - a).cwiseAbs().maxCoeff());
        err = std::max(err, std::abs(a.trace().real() - 1.0));
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            const auto &sj = experiments::bell_setting(names[j]);
            err = std::max(err, (a * optics::bell_projector(sj.hwp3, sj.p2).matrix()).cwiseAbs().maxCoeff());
        }
        sum += a;
    }
    err = std::max(err, (sum - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff());

    bool freq_ok = true;
    double worst_z = 0.0;
    long trials = 0;
    for (const char *cfg : {"noise_free_teleport.toml", "calibrated_teleport.toml"}) {
        const auto b = experiments::bell_outcome_statistics(experiments::load_config(kConfigs / cfg));
        trials = b.trials;
        const double s = std::sqrt(b.trials * 0.25 * 0.75);
        for (int k = 0; k < 4; ++k) worst_z = std::max(worst_z, std::abs(b.counts[k] - 0.25 * b.trials) / s);
    }
    freq_ok = worst_z <= kBellSigmas;
    const bool ok = err <= kBellTol && freq_ok && trials == 100000;
    return {6, ok, "projector algebra error " + fmt("%.2e", err) + ", worst outcome deviation " + fmt("%.2f", worst_z) +
                       " sigma over " + std::to_string(trials) + " trials"};
}

Line scaling() {
    auto cfg = experiments::load_config(kConfigs / "calibrated_entanglement.toml");
    const double t = cfg.integration_time;
    bool ok = true;
    std::string ratios;
    for (int r = 0; r < kScalingRepeats; ++r) {
        cfg.noise.seed = 1 + static_cast<std::uint64_t>(r);
        cfg.integration_time = t;
        const double s1 = experiments::run_entanglement(cfg).bootstrap.stddev.at("F_e_raw");
        cfg.integration_time = 4.0 * t;
        const double s4 = experiments::run_entanglement(cfg).bootstrap.stddev.at("F_e_raw");
        const double ratio = s1 / s4;
        ok = ok && in(ratio, kScalingRatio);
        ratios += (r ? " " : "") + fmt("%.2f", ratio);
    }
    return {7, ok, "sigma(t)/sigma(4t) per repeat: " + ratios};
}

Line determinism() {
    struct Case {
        std::string cmd, config;
    };
    const std::vector<Case> cases{{"run", "calibrated_entanglement.toml"},
                                  {"run", "calibrated_teleport.toml"},
                                  {"run", "visibility_scan.toml"},
                                  {"calibrate", "calibrate.toml"}};
    int files = 0;
    for (const auto &c : cases) {
        const fs::path a = scratch("c8a"), b = scratch("c8b");
        const std::string args = c.cmd + " " + (kConfigs / c.config).string() + " --output ";
        if (sh(args + a.string(), "OMP_NUM_THREADS=1") != 0 || sh(args + b.string(), "OMP_NUM_THREADS=4") != 0)
            return {8, false, c.config + ": run failed"};
        for (const auto &entry : fs::directory_iterator(a)) {
            const fs::path other = b / entry.path().filename();
            if (!fs::exists(other) || slurp(entry.path()) != slurp(other))
                return {8, false, c.config + ": " + entry.path().filename().string() + " differs"};
            ++files;
        }
    }
    return {8, files > 0, std::to_string(files) + " output files byte-identical at 1 and 4 threads"};
}

}  // namespace

int main() {
    const std::vector<std::function<Line()>> criteria{noise_free, identity, campaign, tomography,
                                                      fef,        bell,     scaling,  determinism};
    int failed = 0;
    for (const auto &c : criteria) {
        Line l;
        try {
            l = c();
        } catch (const std::exception &e) {
            l = {0, false, std::string("exception: ") + e.what()};
        }
        if (!l.pass) ++failed;
        std::printf("criterion %d: %s  %s\n", l.id, l.pass ? "PASS" : "FAIL", l.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
