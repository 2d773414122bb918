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

#include "ptsim/tomo/bootstrap.hpp"

#include <cmath>
#include <exception>
#include <optional>
#include <random>

#include "ptsim/errors.hpp"
#include "ptsim/rng.hpp"

namespace ptsim::tomo {

namespace {

std::uint64_t poisson(Engine &e, std::uint64_t mean) {
    if (mean == 0) return 0;
    std::poisson_distribution<std::uint64_t> d(static_cast<double>(mean));
    return d(e);
}

Scalars checked_nominal(const Pipeline &pipeline, const std::vector<noise::CountRecord> &counts, int n) {
    if (!pipeline) throw InvalidInput("bootstrap: empty pipeline");
    if (n < 100) throw InvalidInput("bootstrap: need at least 100 resamples");
    Scalars a = pipeline(counts);
    Scalars b = pipeline(counts);
    if (a != b) throw InvalidInput("bootstrap: pipeline is not reproducible on identical counts");
    return a;
}

BootstrapResult aggregate(Scalars nominal, const std::vector<std::optional<Scalars>> &runs) {
    BootstrapResult r;
    r.nominal = std::move(nominal);
    r.n_resamples = static_cast<int>(runs.size());
    std::map<std::string, std::vector<double>> values;
    for (const auto &run : runs) {
        if (!run) {
            ++r.failed;
            continue;
        }
        for (const auto &[k, v] : *run) values[k].push_back(v);
    }
    for (const auto &[k, vs] : values) {
        double mean = 0.0;
        for (double v : vs) mean += v;
        mean /= static_cast<double>(vs.size());
        double ss = 0.0;
        for (double v : vs) ss += (v - mean) * (v - mean);
        r.mean[k] = mean;
        r.stddev[k] = vs.size() > 1 ? std::sqrt(ss / static_cast<double>(vs.size() - 1)) : 0.0;
    }
    return r;
}

std::optional<Scalars> one(const Pipeline &pipeline, const std::vector<noise::CountRecord> &counts,
                           std::uint64_t seed, std::uint64_t r) {
    try {
        return pipeline(poisson_resample(counts, seed, r));
    } catch (const InvalidInput &) {
        return std::nullopt;
    } catch (const ConvergenceError &) {
        return std::nullopt;
    }
}

}  // namespace

std::vector<noise::CountRecord> poisson_resample(const std::vector<noise::CountRecord> &counts, std::uint64_t seed,
                                                 std::uint64_t r) {
    const std::uint64_t stream = derive_seed(seed, r);
    std::vector<noise::CountRecord> out = counts;
    for (auto &rec : out) {
        Engine e = make_engine(stream, rec.setting_id);
        rec.raw = poisson(e, rec.raw);
        rec.delayed = poisson(e, rec.delayed);
    }
    return out;
}

BootstrapResult bootstrap_errors_serial(const Pipeline &pipeline, const std::vector<noise::CountRecord> &counts,
                                        int n_resamples, std::uint64_t seed) {
    Scalars nominal = checked_nominal(pipeline, counts, n_resamples);
    std::vector<std::optional<Scalars>> runs(static_cast<std::size_t>(n_resamples));
    for (int r = 0; r < n_resamples; ++r)
        runs[static_cast<std::size_t>(r)] = one(pipeline, counts, seed, static_cast<std::uint64_t>(r));
    return aggregate(std::move(nominal), runs);
}

BootstrapResult bootstrap_errors_omp(const Pipeline &pipeline, const std::vector<noise::CountRecord> &counts,
                                     int n_resamples, std::uint64_t seed) {
    Scalars nominal = checked_nominal(pipeline, counts, n_resamples);
    std::vector<std::optional<Scalars>> runs(static_cast<std::size_t>(n_resamples));
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < n_resamples; ++r) {
        try {
            runs[static_cast<std::size_t>(r)] = one(pipeline, counts, seed, static_cast<std::uint64_t>(r));
        } catch (...) {
#pragma omp critical(ptsim_bootstrap_error)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return aggregate(std::move(nominal), runs);
}

}  // namespace ptsim::tomo
