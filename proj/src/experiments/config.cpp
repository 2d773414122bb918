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

#include "ptsim/experiments/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "toml.hpp"

#include "ptsim/errors.hpp"
#include "ptsim/format.hpp"
#include "ptsim/qstate/ops.hpp"
#include "ptsim/rng.hpp"

namespace ptsim::experiments {

namespace {

struct Reader {
    std::string source;

    [[noreturn]] void fail(const toml::node &n, const std::string &what) const {
        const auto &src = n.source();
        throw ConfigError(source + ":" + std::to_string(src.begin.line) + ": " + what);
    }

    void only_keys(const toml::table &t, const std::string &section, const std::set<std::string> &allowed) const {
        for (const auto &[k, v] : t)
            if (!allowed.count(std::string(k.str())))
                fail(v, "unknown key '" + std::string(k.str()) + "' in [" + section + "]");
    }

    double number(const toml::node &n, const std::string &key) const {
        if (auto d = n.value_exact<double>()) return *d;
        if (auto i = n.value_exact<std::int64_t>()) return static_cast<double>(*i);
        fail(n, "'" + key + "' must be a number");
    }

    bool boolean(const toml::node &n, const std::string &key) const {
        if (auto b = n.value_exact<bool>()) return *b;
        fail(n, "'" + key + "' must be true or false");
    }

    std::string string(const toml::node &n, const std::string &key) const {
        if (auto s = n.value_exact<std::string>()) return *s;
        fail(n, "'" + key + "' must be a string");
    }

    std::int64_t integer(const toml::node &n, const std::string &key) const {
        if (auto i = n.value_exact<std::int64_t>()) return *i;
        fail(n, "'" + key + "' must be an integer");
    }

    std::vector<std::string> strings(const toml::node &n, const std::string &key) const {
        const auto *arr = n.as_array();
        if (!arr) fail(n, "'" + key + "' must be an array of strings");
        std::vector<std::string> out;
        for (const auto &e : *arr) out.push_back(string(e, key));
        return out;
    }
};

void read_noise(const Reader &r, const toml::table &t, noise::NoiseParams &p) {
    r.only_keys(t, "noise",
                {"p_s", "eta_read", "eta_det_s", "eta_det_as", "tau_phonon", "tau_dephase", "read_delay", "rep_rate",
                 "sbr", "dephasing_mode", "include_double_pairs", "path_imbalance", "seed"});
    for (const auto &[key, node] : t) {
        const std::string k(key.str());
        if (k == "p_s") p.p_s = r.number(node, k);
        else if (k == "eta_read") p.eta_read = r.number(node, k);
        else if (k == "eta_det_s") p.eta_det_s = r.number(node, k);
        else if (k == "eta_det_as") p.eta_det_as = r.number(node, k);
        else if (k == "tau_phonon") p.tau_phonon = r.number(node, k);
        else if (k == "tau_dephase") p.tau_dephase = r.number(node, k);
        else if (k == "read_delay") p.read_delay = r.number(node, k);
        else if (k == "rep_rate") p.rep_rate = r.number(node, k);
        else if (k == "sbr") p.sbr = r.number(node, k);
        else if (k == "path_imbalance") p.path_imbalance = r.number(node, k);
        else if (k == "include_double_pairs") p.include_double_pairs = r.boolean(node, k);
        else if (k == "dephasing_mode") {
            try {
                p.dephasing_mode = noise::parse_dephasing(r.string(node, k));
            } catch (const InvalidInput &e) {
                r.fail(node, e.what());
            }
        } else if (k == "seed") {
            auto s = r.integer(node, k);
            if (s < 0) r.fail(node, "'seed' must be nonnegative");
            p.seed = static_cast<std::uint64_t>(s);
        }
    }
    try {
        p.validate();
    } catch (const InvalidInput &e) {
        throw ConfigError(r.source + ": [noise] " + e.what());
    }
}

std::filesystem::path resolve(const std::filesystem::path &base, const std::string &p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

toml::table parse_table(std::string_view text, std::string_view source) {
    try {
        return toml::parse(text, source);
    } catch (const toml::parse_error &e) {
        throw ConfigError(std::string(source) + ":" + std::to_string(e.source().begin.line) + ": " +
                          std::string(e.description()));
    }
}

std::string quoted(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string toml_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::string s = format_double(v);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::string string_list(const std::vector<std::string> &v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + quoted(v[i]);
    return out + "]";
}

}  // namespace

std::string_view scenario_name(Scenario s) {
    switch (s) {
    case Scenario::ENTANGLEMENT: return "entanglement";
    case Scenario::TELEPORT: return "teleport";
    case Scenario::VISIBILITY_SCAN: return "visibility_scan";
    case Scenario::CALIBRATE: return "calibrate";
    }
    return "entanglement";
}

Scenario parse_scenario(std::string_view s) {
    for (Scenario k : {Scenario::ENTANGLEMENT, Scenario::TELEPORT, Scenario::VISIBILITY_SCAN, Scenario::CALIBRATE})
        if (scenario_name(k) == s) return k;
    throw ConfigError("unknown scenario '" + std::string(s) +
                      "', expected entanglement, teleport, visibility_scan or calibrate");
}

void ExperimentConfig::validate() const {
    if (circuit_file.empty()) throw ConfigError("[scenario] circuit_file is required");
    if (!(integration_time > 0.0) || !std::isfinite(integration_time))
        throw ConfigError("[scenario] integration_time must be positive");
    if (input_states.empty()) throw ConfigError("[scenario] input_states must not be empty");
    std::set<std::string> seen;
    for (const auto &l : input_states) {
        try {
            states::qubit(l);
        } catch (const InvalidInput &) {
            throw ConfigError("[scenario] unknown input state label '" + l + "'");
        }
        if (!seen.insert(l).second) throw ConfigError("[scenario] input state '" + l + "' listed twice");
    }
    if (bell_outcome != "phi+" && bell_outcome != "phi-" && bell_outcome != "psi+" && bell_outcome != "psi-")
        throw ConfigError("[scenario] bell_outcome must be phi+, phi-, psi+ or psi-");
    if (!(scan_step_deg > 0.0) || scan_step_deg > 22.5)
        throw ConfigError("[scenario] scan_step_deg must be in (0, 22.5]");
    try {
        states::qubit(scan_anti_stokes);
    } catch (const InvalidInput &) {
        throw ConfigError("[scenario] unknown scan_anti_stokes label '" + scan_anti_stokes + "'");
    }
    if (bell_trials < 1) throw ConfigError("[scenario] bell_trials must be positive");
    if (bootstrap_n < 100) throw ConfigError("[analysis] bootstrap_n must be at least 100");
    if (!(target_fe >= 0.0 && target_fe <= 1.0) || !(target_vis >= 0.0 && target_vis <= 1.0))
        throw ConfigError("[analysis] calibration targets must lie in [0, 1]");
    if (calibrate_free.empty() || calibrate_free.size() > 2)
        throw ConfigError("[analysis] calibrate_free takes one or two parameters");
    for (const auto &f : calibrate_free)
        if (f != "sbr" && f != "eta_read") throw ConfigError("[analysis] calibrate_free accepts sbr and eta_read");
    if (max_iterations < 1) throw ConfigError("[analysis] max_iterations must be positive");
    try {
        noise.validate();
    } catch (const InvalidInput &e) {
        throw ConfigError(std::string("[noise] ") + e.what());
    }
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path &base_dir, std::string_view source) {
    Reader r{std::string(source)};
    toml::table root = parse_table(text, source);
    ExperimentConfig c;
    c.config_hash = fnv1a(text);
    for (const auto &[key, node] : root) {
        const std::string k(key.str());
        if (k != "noise" && k != "scenario" && k != "analysis") r.fail(node, "unknown section [" + k + "]");
        if (!node.is_table()) r.fail(node, "'" + k + "' must be a table");
    }
    if (const auto *t = root["noise"].as_table()) read_noise(r, *t, c.noise);
    const auto *sc = root["scenario"].as_table();
    if (!sc) throw ConfigError(r.source + ": missing [scenario] section");
    r.only_keys(*sc, "scenario",
                {"kind", "circuit_file", "input_states", "bell_outcome", "integration_time", "output_dir",
                 "shot_noise", "scan_step_deg", "scan_anti_stokes", "scan_qwp3", "bell_trials"});
    bool have_kind = false;
    bool have_output = false;
    for (const auto &[key, node] : *sc) {
        const std::string k(key.str());
        if (k == "kind") {
            try {
                c.scenario = parse_scenario(r.string(node, k));
            } catch (const ConfigError &e) {
                r.fail(node, e.what());
            }
            have_kind = true;
        } else if (k == "circuit_file") c.circuit_file = resolve(base_dir, r.string(node, k));
        else if (k == "input_states") c.input_states = r.strings(node, k);
        else if (k == "bell_outcome") c.bell_outcome = r.string(node, k);
        else if (k == "integration_time") c.integration_time = r.number(node, k);
        else if (k == "output_dir") {
            c.output_dir = resolve(base_dir, r.string(node, k));
            have_output = true;
        }
        else if (k == "shot_noise") c.shot_noise = r.boolean(node, k);
        else if (k == "scan_step_deg") c.scan_step_deg = r.number(node, k);
        else if (k == "scan_anti_stokes") c.scan_anti_stokes = r.string(node, k);
        else if (k == "scan_qwp3") c.scan_qwp3 = r.number(node, k);
        else if (k == "bell_trials") c.bell_trials = static_cast<long>(r.integer(node, k));
    }
    if (!have_kind) throw ConfigError(r.source + ": [scenario] kind is required");
    if (!have_output) c.output_dir = resolve(base_dir, c.output_dir.string());
    if (const auto *an = root["analysis"].as_table()) {
        r.only_keys(*an, "analysis",
                    {"bootstrap_n", "subtract_background", "minimal_grid", "target_fe", "target_vis", "calibrate_free",
                     "max_iterations"});
        for (const auto &[key, node] : *an) {
            const std::string k(key.str());
            if (k == "bootstrap_n") c.bootstrap_n = static_cast<int>(r.integer(node, k));
            else if (k == "subtract_background") c.subtract_background = r.boolean(node, k);
            else if (k == "minimal_grid") c.minimal_grid = r.boolean(node, k);
            else if (k == "target_fe") c.target_fe = r.number(node, k);
            else if (k == "target_vis") c.target_vis = r.number(node, k);
            else if (k == "calibrate_free") c.calibrate_free = r.strings(node, k);
            else if (k == "max_iterations") c.max_iterations = static_cast<int>(r.integer(node, k));
        }
    }
    try {
        c.validate();
    } catch (const ConfigError &e) {
        throw ConfigError(r.source + ": " + e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    return parse_config(read_file(path), path.parent_path(), path.string());
}

void apply_noise_file(ExperimentConfig &cfg, const std::filesystem::path &path) {
    const std::string text = read_file(path);
    Reader r{path.string()};
    toml::table root = parse_table(text, path.string());
    const auto *t = root["noise"].as_table();
    if (!t) throw ConfigError(path.string() + ": missing [noise] section");
    noise::NoiseParams p;
    read_noise(r, *t, p);
    cfg.noise = p;
    cfg.config_hash = fnv1a(text, cfg.config_hash);
}

std::string noise_toml(const noise::NoiseParams &p) {
    std::ostringstream o;
    o << "[noise]\n"
      << "p_s = " << toml_double(p.p_s) << "\n"
      << "eta_read = " << toml_double(p.eta_read) << "\n"
      << "eta_det_s = " << toml_double(p.eta_det_s) << "\n"
      << "eta_det_as = " << toml_double(p.eta_det_as) << "\n"
      << "tau_phonon = " << toml_double(p.tau_phonon) << "\n";
    if (p.tau_dephase) o << "tau_dephase = " << toml_double(*p.tau_dephase) << "\n";
    o << "read_delay = " << toml_double(p.read_delay) << "\n"
      << "rep_rate = " << toml_double(p.rep_rate) << "\n"
      << "sbr = " << toml_double(p.sbr) << "\n"
      << "dephasing_mode = " << quoted(std::string(noise::dephasing_name(p.dephasing_mode))) << "\n"
      << "include_double_pairs = " << (p.include_double_pairs ? "true" : "false") << "\n"
      << "path_imbalance = " << toml_double(p.path_imbalance) << "\n"
      << "seed = " << p.seed << "\n";
    return o.str();
}

std::string to_toml(const ExperimentConfig &c) {
    std::ostringstream o;
    o << "[scenario]\n"
      << "kind = " << quoted(std::string(scenario_name(c.scenario))) << "\n"
      << "circuit_file = " << quoted(c.circuit_file.string()) << "\n"
      << "input_states = " << string_list(c.input_states) << "\n"
      << "bell_outcome = " << quoted(c.bell_outcome) << "\n"
      << "integration_time = " << toml_double(c.integration_time) << "\n"
      << "output_dir = " << quoted(c.output_dir.string()) << "\n"
      << "shot_noise = " << (c.shot_noise ? "true" : "false") << "\n"
      << "scan_step_deg = " << toml_double(c.scan_step_deg) << "\n"
      << "scan_anti_stokes = " << quoted(c.scan_anti_stokes) << "\n"
      << "scan_qwp3 = " << toml_double(c.scan_qwp3) << "\n"
      << "bell_trials = " << c.bell_trials << "\n\n"
      << noise_toml(c.noise) << "\n"
      << "[analysis]\n"
      << "bootstrap_n = " << c.bootstrap_n << "\n"
      << "subtract_background = " << (c.subtract_background ? "true" : "false") << "\n"
      << "minimal_grid = " << (c.minimal_grid ? "true" : "false") << "\n"
      << "target_fe = " << toml_double(c.target_fe) << "\n"
      << "target_vis = " << toml_double(c.target_vis) << "\n"
      << "calibrate_free = " << string_list(c.calibrate_free) << "\n"
      << "max_iterations = " << c.max_iterations << "\n";
    return o.str();
}

}  // namespace ptsim::experiments
