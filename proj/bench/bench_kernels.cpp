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

// Serial reference vs OpenMP for the three data-parallel kernels.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "ptsim/kernels/fef_sampling.hpp"
#include "ptsim/noise/counts.hpp"
#include "ptsim/qstate/fidelity.hpp"
#include "ptsim/qstate/ops.hpp"
#include "ptsim/qstate/random.hpp"
#include "ptsim/rng.hpp"
#include "ptsim/tomo/bootstrap.hpp"
#include "ptsim/tomo/state.hpp"

using namespace ptsim;

namespace {

CMatrix bench_state() {
    Engine rng = make_engine(11, "bench-state");
    return ginibre_state(rng, 4).matrix();
}

void BM_FefSamplingSerial(benchmark::State &st) {
    const CMatrix rho = bench_state();
    for (auto _ : st) benchmark::DoNotOptimize(kernels::fef_sampling_serial(rho, static_cast<std::uint64_t>(st.range(0)), 3));
}
void BM_FefSamplingOmp(benchmark::State &st) {
    const CMatrix rho = bench_state();
    for (auto _ : st) benchmark::DoNotOptimize(kernels::fef_sampling_omp(rho, static_cast<std::uint64_t>(st.range(0)), 3));
}
BENCHMARK(BM_FefSamplingSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FefSamplingOmp)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

std::vector<noise::SettingProbabilities> bench_probs(int n) {
    std::vector<noise::SettingProbabilities> probs;
    for (int k = 0; k < n; ++k) {
        noise::SettingProbabilities p;
        p.setting_id = "s" + std::to_string(k);
        p.p_true = 1e-7 * (1 + k % 7);
        p.p_accidental = 2e-9;
        p.p_singles_s = 1e-4;
        p.p_singles_as = 1e-4;
        probs.push_back(p);
    }
    return probs;
}

void BM_SampleCountsSerial(benchmark::State &st) {
    const auto probs = bench_probs(static_cast<int>(st.range(0)));
    noise::NoiseParams params;
    for (auto _ : st) benchmark::DoNotOptimize(noise::sample_counts_serial(probs, 25.0, params));
}
void BM_SampleCountsOmp(benchmark::State &st) {
    const auto probs = bench_probs(static_cast<int>(st.range(0)));
    noise::NoiseParams params;
    for (auto _ : st) benchmark::DoNotOptimize(noise::sample_counts_omp(probs, 25.0, params));
}
BENCHMARK(BM_SampleCountsSerial)->Arg(36)->Arg(1024);
BENCHMARK(BM_SampleCountsOmp)->Arg(36)->Arg(1024);

struct QubitCase {
    std::vector<tomo::MeasurementSetting> settings = tomo::local_grid(1);
    std::vector<noise::CountRecord> counts;
    QubitCase() {
        const CMatrix rho = states::qubit("+").projector().matrix() * 0.9 + CMatrix::Identity(2, 2) * 0.05;
        for (const auto &s : settings) {
            noise::CountRecord r;
            r.setting_id = s.setting_id;
            r.raw = static_cast<std::uint64_t>(1000.0 * (rho * s.povm_element.matrix()).trace().real());
            r.delayed = 20;
            counts.push_back(r);
        }
    }
    tomo::Pipeline pipeline() const {
        return [settings = settings](const std::vector<noise::CountRecord> &c) {
            auto est = tomo::qst_mle(c, settings, 2);
            return tomo::Scalars{{"F", state_fidelity(states::qubit("+"), est.rho)}};
        };
    }
};

void BM_BootstrapSerial(benchmark::State &st) {
    QubitCase q;
    for (auto _ : st)
        benchmark::DoNotOptimize(tomo::bootstrap_errors_serial(q.pipeline(), q.counts, static_cast<int>(st.range(0)), 5));
}
void BM_BootstrapOmp(benchmark::State &st) {
    QubitCase q;
    for (auto _ : st)
        benchmark::DoNotOptimize(tomo::bootstrap_errors_omp(q.pipeline(), q.counts, static_cast<int>(st.range(0)), 5));
}
BENCHMARK(BM_BootstrapSerial)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BootstrapOmp)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
