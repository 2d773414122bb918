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

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>

#include "common.hpp"
#include "ptsim/experiments/plan.hpp"
#include "ptsim/qstate/channel.hpp"
#include "ptsim/qstate/fidelity.hpp"
#include "ptsim/qstate/ops.hpp"
#include "ptsim/tomo/json.hpp"

using namespace ptsim;
using namespace ptsim::tomo;
namespace fs = std::filesystem;

namespace {

struct Group {
    std::string input;
    std::vector<MeasurementSetting> settings;
    std::vector<CountRecord> records;
};

std::map<std::string, Group> group_records(const std::vector<CountRecord> &records) {
    std::map<std::string, Group> groups;
    for (const auto &r : records) {
        auto p = experiments::parse_setting_id(r.setting_id);
        if (!p) continue;
        auto &g = groups[p->group.empty() ? std::to_string(p->setting.basis_label.size()) + "q" : p->group];
        g.input = p->input;
        g.settings.push_back(p->setting);
        g.records.push_back(r);
    }
    return groups;
}

std::vector<CountRecord> read_dir_counts(const fs::path &dir) {
    std::vector<fs::path> files;
    for (const auto &e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<CountRecord> out;
    for (const auto &f : files) {
        auto recs = noise::read_counts_csv(f.string());
        out.insert(out.end(), recs.begin(), recs.end());
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"tomo: state, process and visibility reconstruction from count CSVs"};
    app.require_subcommand(1);
    std::string counts, runs, scan;
    bool subtract = false;

    auto *state = app.add_subcommand("state", "Maximum-likelihood state tomography");
    state->add_option("--counts", counts, "CountRecord CSV")->required()->check(CLI::ExistingFile);
    state->add_flag("--subtract-bg", subtract, "subtract delayed-window coincidences");

    auto *process = app.add_subcommand("process", "Maximum-likelihood process tomography of teleport runs");
    process->add_option("--runs", runs, "directory of CountRecord CSVs")->required()->check(CLI::ExistingDirectory);
    process->add_flag("--subtract-bg", subtract, "subtract delayed-window coincidences");

    auto *vis = app.add_subcommand("visibility", "Fit the polarizer-scan fringe");
    vis->add_option("--scan", scan, "CountRecord CSV; angle from the p2 column")->required()->check(CLI::ExistingFile);
    vis->add_flag("--subtract-bg", subtract, "subtract delayed-window coincidences");

    if (int rc = tools::parse_cli(app, argc, argv)) return rc < 0 ? 0 : rc;

    return tools::guarded([&]() -> int {
        TomoOptions opts;
        opts.subtract_background = subtract;
        Json out;
        bool converged = true;
        if (*state) {
            auto groups = group_records(noise::read_counts_csv(counts));
            if (groups.empty()) throw InvalidInput("no tomography settings recognized in " + counts);
            for (const auto &[name, g] : groups) {
                const std::size_t dim = g.settings.front().povm_element.dim();
                auto est = qst_mle(g.records, g.settings, dim, opts);
                Json j = state_json(est);
                if (dim == 4) j["F_e"] = fully_entangled_fraction(est.rho).value;
                if (!g.input.empty()) j["F"] = state_fidelity(states::qubit(g.input), est.rho);
                converged = converged && est.diag.converged;
                out[name] = j;
            }
        } else if (*process) {
            auto groups = group_records(read_dir_counts(runs));
            std::vector<ProcessRun> prs;
            for (const auto &[name, g] : groups)
                if (name.rfind("tel:", 0) == 0) prs.push_back({states::qubit(g.input), g.settings, g.records});
            if (prs.empty()) throw InvalidInput("no teleport (tel:) records in " + runs);
            auto est = qpt_mle(prs, opts);
            out = process_json(est);
            out["F_p"] = process_fidelity(est.chi, ProcessMatrix::identity());
            out["F_bar"] = average_fidelity_from_process(out["F_p"].get<double>());
            converged = est.diag.converged;
        } else {
            auto recs = noise::read_counts_csv(scan);
            bool any_vis = std::any_of(recs.begin(), recs.end(),
                                       [](const CountRecord &r) { return r.setting_id.rfind("vis:", 0) == 0; });
            std::vector<ScanPoint> pts;
            for (const auto &r : recs) {
                if (any_vis && r.setting_id.rfind("vis:", 0) != 0) continue;
                double c = subtract ? subtract_background(r).value : static_cast<double>(r.raw);
                pts.push_back({r.angles.p2, c / r.t_sec});
            }
            out = visibility_json(fit_visibility(pts));
        }
        std::cout << out.dump(2) << "\n";
        return converged ? tools::kOk : tools::kNonConvergence;
    });
}
