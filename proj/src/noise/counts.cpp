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

#include "ptsim/noise/counts.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "ptsim/errors.hpp"
#include "ptsim/format.hpp"
#include "ptsim/rng.hpp"

namespace ptsim::noise {

namespace {

std::uint64_t draw(Engine &rng, double mean, bool shot_noise) {
    if (!(mean > 0.0)) return 0;
    if (!shot_noise) return static_cast<std::uint64_t>(std::llround(mean));
    std::poisson_distribution<std::uint64_t> d(mean);
    return d(rng);
}

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            f.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    f.push_back(cur);
    return f;
}

double parse_real(const std::string &s, int line, const char *field) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception &) {
        throw InvalidInput("counts csv line " + std::to_string(line) + ": bad " + field + " '" + s + "'");
    }
}

std::uint64_t parse_count(const std::string &s, int line, const char *field) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidInput("counts csv line " + std::to_string(line) + ": bad " + field + " '" + s + "'");
    return std::stoull(s);
}

}  // namespace

bool CountRecord::operator==(const CountRecord &o) const {
    return setting_id == o.setting_id && angles.hwp3 == o.angles.hwp3 && angles.p2 == o.angles.p2 &&
           angles.hwp5 == o.angles.hwp5 && angles.qwp2 == o.angles.qwp2 && raw == o.raw && delayed == o.delayed &&
           singles_s == o.singles_s && singles_as == o.singles_as && t_sec == o.t_sec;
}

SampledCounts sample_counts(const SettingProbabilities &probs, double integration_time, const NoiseParams &params,
                            const SamplingOptions &opts) {
    if (!(integration_time > 0.0)) throw InvalidInput("integration time must be positive");
    const double n = params.pulses(integration_time);
    if (n < 1.0) throw InvalidInput("integration time shorter than one pulse period");
    for (double v : {probs.p_true, probs.p_accidental, probs.p_singles_s, probs.p_singles_as})
        if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput("probability outside [0, 1] for " + probs.setting_id);

    Engine rng = make_engine(params.seed, probs.setting_id);
    SampledCounts s;
    s.true_part = draw(rng, n * probs.p_true, opts.shot_noise);
    s.accidental_part = draw(rng, n * probs.p_accidental, opts.shot_noise);
    CountRecord &r = s.record;
    r.setting_id = probs.setting_id;
    r.angles = probs.angles;
    r.raw = s.true_part + s.accidental_part;
    r.delayed = draw(rng, n * probs.p_accidental, opts.shot_noise);
    r.singles_s = draw(rng, n * probs.p_singles_s, opts.shot_noise);
    r.singles_as = draw(rng, n * probs.p_singles_as, opts.shot_noise);
    r.t_sec = integration_time;
    return s;
}

std::vector<SampledCounts> sample_counts_serial(const std::vector<SettingProbabilities> &probs,
                                                double integration_time, const NoiseParams &params,
                                                const SamplingOptions &opts) {
    std::vector<SampledCounts> out;
    out.reserve(probs.size());
    for (const auto &p : probs) out.push_back(sample_counts(p, integration_time, params, opts));
    return out;
}

std::vector<SampledCounts> sample_counts_omp(const std::vector<SettingProbabilities> &probs, double integration_time,
                                             const NoiseParams &params, const SamplingOptions &opts) {
    std::vector<SampledCounts> out(probs.size());
    const auto n = static_cast<std::int64_t>(probs.size());
    std::exception_ptr err;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] =
                sample_counts(probs[static_cast<std::size_t>(i)], integration_time, params, opts);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

void write_counts_csv(std::ostream &out, const std::vector<CountRecord> &records) {
    out << kCountCsvHeader << '\n';
    for (const auto &r : records) {
        if (r.setting_id.find_first_of(",\n\r") != std::string::npos)
            throw InvalidInput("setting_id may not contain commas or newlines: " + r.setting_id);
        out << r.setting_id << ',' << format_double(r.angles.hwp3) << ',' << format_double(r.angles.p2) << ','
            << format_double(r.angles.hwp5) << ',' << format_double(r.angles.qwp2) << ',' << r.raw << ','
            << r.delayed << ',' << r.singles_s << ',' << r.singles_as << ',' << format_double(r.t_sec) << '\n';
    }
}

std::vector<CountRecord> read_counts_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidInput("counts csv is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCountCsvHeader) throw InvalidInput("counts csv header must be: " + std::string(kCountCsvHeader));
    std::vector<CountRecord> out;
    int n = 1;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty() || line == "\r") continue;
        auto f = split_csv(line);
        if (f.size() != 10)
            throw InvalidInput("counts csv line " + std::to_string(n) + ": expected 10 fields, got " +
                               std::to_string(f.size()));
        CountRecord r;
        r.setting_id = f[0];
        r.angles = {parse_real(f[1], n, "hwp3"), parse_real(f[2], n, "p2"), parse_real(f[3], n, "hwp5"),
                    parse_real(f[4], n, "qwp2")};
        r.raw = parse_count(f[5], n, "raw");
        r.delayed = parse_count(f[6], n, "delayed");
        r.singles_s = parse_count(f[7], n, "singles_s");
        r.singles_as = parse_count(f[8], n, "singles_as");
        r.t_sec = parse_real(f[9], n, "t_sec");
        if (!(r.t_sec > 0.0)) throw InvalidInput("counts csv line " + std::to_string(n) + ": t_sec must be positive");
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CountRecord> read_counts_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open counts file " + path);
    return read_counts_csv(in);
}

}  // namespace ptsim::noise
