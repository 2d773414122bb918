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

#include "ptsim/experiments/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>

#include "ptsim/errors.hpp"
#include "ptsim/noise/coincidence.hpp"
#include "ptsim/qstate/fidelity.hpp"
#include "ptsim/qstate/ops.hpp"
#include "ptsim/rng.hpp"
#include "ptsim/tomo/mle.hpp"

namespace ptsim::experiments {

namespace {

std::vector<std::pair<std::string, double>> scan_ids(const std::vector<PlannedSetting> &plan) {
    std::vector<std::pair<std::string, double>> out;
    for (const auto &s : plan) out.emplace_back(s.id, s.scan_angle);
    return out;
}

double uu_rate(const optics::Circuit &c, const ExperimentConfig &cfg, const noise::JointState &state) {
    const auto uu = entanglement_plan(c, true).front();  // ent:H:H
    auto pr = noise::coincidence_probabilities(state, optics::compile(c, uu.overrides), cfg.noise, uu.id, uu.angles);
    return cfg.noise.pulses(1.0) * (pr.p_true + pr.p_accidental);
}

tomo::BootstrapResult bootstrap(const tomo::Pipeline &pipeline, const std::vector<CountRecord> &counts,
                                const ExperimentConfig &cfg) {
    return tomo::bootstrap_errors_omp(pipeline, counts, cfg.bootstrap_n, derive_seed(cfg.noise.seed, "bootstrap"));
}

}  // namespace

optics::Circuit load_two_arm_circuit(const ExperimentConfig &cfg) {
    optics::Circuit c = optics::load_circuit(cfg.circuit_file.string());
    noise::detection_povms(optics::compile(c));  // throws unless two detected arms
    return c;
}

std::vector<CountRecord> simulate_counts(const optics::Circuit &c, const std::vector<PlannedSetting> &plan,
                                         const ExperimentConfig &cfg) {
    const auto state = noise::prepared_source(cfg.noise);
    const auto probs = plan_probabilities(c, plan, state, cfg.noise);
    noise::SamplingOptions opts;
    opts.shot_noise = cfg.shot_noise;
    auto sampled = noise::sample_counts_omp(probs, cfg.integration_time, cfg.noise, opts);
    std::vector<CountRecord> out;
    out.reserve(sampled.size());
    for (auto &s : sampled) out.push_back(std::move(s.record));
    return out;
}

EntanglementRun run_entanglement(const ExperimentConfig &cfg) {
    const optics::Circuit c = load_two_arm_circuit(cfg);
    auto grid = entanglement_plan(c, cfg.minimal_grid);
    auto scan = scan_plan(c, cfg.scan_step_deg, cfg.scan_anti_stokes, cfg.scan_qwp3);
    EntanglementRun run;
    run.setup = {logical_settings(grid), scan_ids(scan), cfg.subtract_background};
    std::vector<PlannedSetting> all = grid;
    all.insert(all.end(), scan.begin(), scan.end());
    run.counts = simulate_counts(c, all, cfg);
    run.analysis = analyze_entanglement(run.setup, run.counts);
    const EntanglementSetup setup = run.setup;
    run.bootstrap = bootstrap(
        [setup](const std::vector<CountRecord> &r) { return analyze_entanglement(setup, r).scalars(); }, run.counts,
        cfg);
    run.uu_rate = uu_rate(c, cfg, noise::prepared_source(cfg.noise));
    return run;
}

EntanglementRun run_visibility_scan(const ExperimentConfig &cfg) {
    const optics::Circuit c = load_two_arm_circuit(cfg);
    auto scan = scan_plan(c, cfg.scan_step_deg, cfg.scan_anti_stokes, cfg.scan_qwp3);
    EntanglementRun run;
    run.setup = {{}, scan_ids(scan), cfg.subtract_background};
    run.counts = simulate_counts(c, scan, cfg);
    auto analyze = [](const EntanglementSetup &s, const std::vector<CountRecord> &r) {
        EntanglementAnalysis a;
        a.has_scan = true;
        a.vis_raw = tomo::fit_visibility(scan_points(s.scan, r, false));
        if (s.subtract) {
            a.vis_sub = tomo::fit_visibility(scan_points(s.scan, r, true));
            a.has_sub = true;
        }
        return a;
    };
    run.analysis = analyze(run.setup, run.counts);
    const EntanglementSetup setup = run.setup;
    run.bootstrap = bootstrap(
        [setup, analyze](const std::vector<CountRecord> &r) {
            Scalars s = analyze(setup, r).scalars();
            s.erase("F_e_raw");
            s.erase("F_e_sub");
            return s;
        },
        run.counts, cfg);
    run.uu_rate = uu_rate(c, cfg, noise::prepared_source(cfg.noise));
    return run;
}

BellStatistics bell_outcome_statistics(const ExperimentConfig &cfg) {
    const optics::Circuit c = load_two_arm_circuit(cfg);
    const auto state = noise::prepared_source(cfg.noise);
    const std::string input = cfg.input_states.front();
    BellStatistics b;
    double total = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        optics::AngleMap a = teleport_preparation(c, input, b.outcome[k]);
        const auto &bs = bell_setting(b.outcome[k]);
        a["HWP3"] = bs.hwp3;
        a["P2"] = bs.p2;
        auto pr = noise::coincidence_probabilities(state, optics::compile(c, a), cfg.noise, "bell:" + b.outcome[k]);
        b.probability[k] = pr.p_singles_s;
        total += pr.p_singles_s;
    }
    if (!(total > 0.0)) throw InvalidInput("bell_outcome_statistics: no Stokes detections");
    for (std::size_t k = 0; k < 4; ++k) b.expected[k] = b.probability[k] / total;
    b.trials = cfg.bell_trials;
    Engine e = make_engine(cfg.noise.seed, "bell-outcomes");
    std::discrete_distribution<int> d(b.expected.begin(), b.expected.end());
    for (long t = 0; t < b.trials; ++t) ++b.counts[static_cast<std::size_t>(d(e))];
    for (std::size_t k = 0; k < 4; ++k) {
        const double n = static_cast<double>(b.trials);
        const double sigma = std::sqrt(n * b.expected[k] * (1.0 - b.expected[k]));
        if (std::abs(static_cast<double>(b.counts[k]) - n * b.expected[k]) > 3.0 * sigma) b.within_3sigma = false;
        if (b.outcome[k] == cfg.bell_outcome) b.success_fraction = b.expected[k];
    }
    return b;
}

TeleportRun run_teleport(const ExperimentConfig &cfg) {
    const optics::Circuit c = load_two_arm_circuit(cfg);
    TeleportRun run;
    run.setup.inputs = cfg.input_states;
    run.setup.subtract = cfg.subtract_background;
    std::vector<PlannedSetting> all;
    for (const auto &in : cfg.input_states) {
        auto plan = teleport_plan(c, in, cfg.bell_outcome);
        run.setup.settings.push_back(logical_settings(plan));
        all.insert(all.end(), plan.begin(), plan.end());
    }
    run.counts = simulate_counts(c, all, cfg);
    run.analysis = analyze_teleport(run.setup, run.counts);
    const TeleportSetup setup = run.setup;
    run.bootstrap = bootstrap(
        [setup](const std::vector<CountRecord> &r) { return analyze_teleport(setup, r).scalars(); }, run.counts, cfg);
    run.bell = bell_outcome_statistics(cfg);
    return run;
}

AnalyticModel::AnalyticModel(const optics::Circuit &c, const ExperimentConfig &cfg)
    : grid_(entanglement_plan(c, cfg.minimal_grid)),
      scan_(scan_plan(c, cfg.scan_step_deg, cfg.scan_anti_stokes, cfg.scan_qwp3)),
      logical_(logical_settings(grid_)) {
    for (const auto &s : grid_) grid_c_.push_back(optics::compile(c, s.overrides));
    for (const auto &s : scan_) scan_c_.push_back(optics::compile(c, s.overrides));
}

AnalyticObservables AnalyticModel::evaluate(const noise::NoiseParams &p) const {
    const auto state = noise::prepared_source(p);
    AnalyticObservables o;
    tomo::CountVector raw, sub;
    for (std::size_t k = 0; k < grid_.size(); ++k) {
        auto pr = noise::coincidence_probabilities(state, grid_c_[k], p, grid_[k].id, grid_[k].angles);
        raw.n.push_back(pr.p_true + pr.p_accidental);
        sub.n.push_back(pr.p_true);
        raw.t.push_back(1.0);
        sub.t.push_back(1.0);
        if (k == 0) o.uu_rate = p.pulses(1.0) * (pr.p_true + pr.p_accidental);
    }
    auto fe = [&](const tomo::CountVector &cv) {
        tomo::MleProblem prob;
        for (std::size_t k = 0; k < logical_.size(); ++k) {
            prob.q.push_back(logical_[k].povm_element.matrix());
            prob.n.push_back(cv.n[k]);
        }
        CMatrix x = tomo::linear_inversion(prob);
        DensityMatrix rho;
        if (is_physical_density(x / x.trace().real()))
            rho = DensityMatrix::from_unnormalized(x);
        else
            rho = tomo::qst_mle_counts(cv, logical_, 4).rho;
        return fully_entangled_fraction(rho).value;
    };
    o.fe_raw = fe(raw);
    o.fe_sub = fe(sub);
    std::vector<tomo::ScanPoint> vr, vs;
    for (std::size_t k = 0; k < scan_.size(); ++k) {
        auto pr = noise::coincidence_probabilities(state, scan_c_[k], p, scan_[k].id, scan_[k].angles);
        vr.push_back({scan_[k].scan_angle, pr.p_true + pr.p_accidental});
        vs.push_back({scan_[k].scan_angle, pr.p_true});
    }
    o.v_raw = tomo::fit_visibility(vr).visibility;
    o.v_sub = tomo::fit_visibility(vs).visibility;
    return o;
}

namespace {

struct Coordinate {
    std::string name;
    double lo, hi;  // in search space
    double get(const noise::NoiseParams &p) const {
        if (name == "sbr") return std::clamp(std::isfinite(p.sbr) ? std::log10(p.sbr) : hi, lo, hi);
        return std::clamp(p.eta_read, lo, hi);
    }
    void set(noise::NoiseParams &p, double x) const {
        if (name == "sbr")
            p.sbr = std::pow(10.0, x);
        else
            p.eta_read = x;
    }
};

struct LineContext {
    const AnalyticModel *model;
    const Coordinate *coord;
    noise::NoiseParams base;
    double target_fe, target_vis;
};

double residual(const AnalyticObservables &o, double fe, double v) {
    return (o.fe_raw - fe) * (o.fe_raw - fe) + (o.v_raw - v) * (o.v_raw - v);
}

double line_f(double x, void *params) {
    auto *ctx = static_cast<LineContext *>(params);
    noise::NoiseParams p = ctx->base;
    ctx->coord->set(p, x);
    return residual(ctx->model->evaluate(p), ctx->target_fe, ctx->target_vis);
}

// Coarse grid, then Brent inside the bracket around the best grid point.
double line_minimize(LineContext &ctx, double x0, double f0) {
    const Coordinate &c = *ctx.coord;
    constexpr int n = 24;
    std::vector<double> xs(n + 1), fs(n + 1);
    int best = 0;
    for (int i = 0; i <= n; ++i) {
        xs[static_cast<std::size_t>(i)] = c.lo + (c.hi - c.lo) * i / n;
        fs[static_cast<std::size_t>(i)] = line_f(xs[static_cast<std::size_t>(i)], &ctx);
        if (fs[static_cast<std::size_t>(i)] < fs[static_cast<std::size_t>(best)]) best = i;
    }
    double bx = xs[static_cast<std::size_t>(best)], bf = fs[static_cast<std::size_t>(best)];
    if (best > 0 && best < n) {
        const auto b = static_cast<std::size_t>(best);
        if (fs[b] < fs[b - 1] && fs[b] < fs[b + 1]) {
            gsl_function fn{&line_f, &ctx};
            gsl_min_fminimizer *m = gsl_min_fminimizer_alloc(gsl_min_fminimizer_brent);
            if (gsl_min_fminimizer_set_with_values(m, &fn, xs[b], fs[b], xs[b - 1], fs[b - 1], xs[b + 1], fs[b + 1]) ==
                GSL_SUCCESS) {
                for (int it = 0; it < 100; ++it) {
                    if (gsl_min_fminimizer_iterate(m) != GSL_SUCCESS) break;
                    const double a = gsl_min_fminimizer_x_lower(m), z = gsl_min_fminimizer_x_upper(m);
                    if (gsl_min_test_interval(a, z, 1e-12, 1e-10) == GSL_SUCCESS) break;
                }
                if (gsl_min_fminimizer_f_minimum(m) < bf) {
                    bx = gsl_min_fminimizer_x_minimum(m);
                    bf = gsl_min_fminimizer_f_minimum(m);
                }
            }
            gsl_min_fminimizer_free(m);
        }
    }
    return bf < f0 ? bx : x0;
}

}  // namespace

CalibrationResult calibrate_noise(const ExperimentConfig &cfg) {
    gsl_set_error_handler_off();
    const optics::Circuit c = load_two_arm_circuit(cfg);
    const AnalyticModel model(c, cfg);
    std::vector<Coordinate> coords;
    for (const auto &f : cfg.calibrate_free) {
        if (f == "sbr")
            coords.push_back({f, std::log10(kSbrBounds[0]), std::log10(kSbrBounds[1])});
        else
            coords.push_back({f, kEtaReadBounds[0], kEtaReadBounds[1]});
    }
    noise::NoiseParams p = cfg.noise;
    for (const auto &co : coords) co.set(p, co.get(p));

    CalibrationResult r;
    r.free = cfg.calibrate_free;
    r.target_fe = cfg.target_fe;
    r.target_vis = cfg.target_vis;
    double f = residual(model.evaluate(p), cfg.target_fe, cfg.target_vis);
    for (r.iterations = 0; r.iterations < cfg.max_iterations;) {
        ++r.iterations;
        const double before = f;
        for (const auto &co : coords) {
            LineContext ctx{&model, &co, p, cfg.target_fe, cfg.target_vis};
            const double x = line_minimize(ctx, co.get(p), f);
            co.set(p, x);
            f = residual(model.evaluate(p), cfg.target_fe, cfg.target_vis);
        }
        if (f < 1e-14 || !(f < before - 1e-15)) break;
    }
    r.params = p;
    r.observables = model.evaluate(p);
    r.residual = f;
    r.converged = f < kCalibrationTolerance;
    return r;
}

}  // namespace ptsim::experiments
