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

#include <iostream>
#include <map>

#include "common.hpp"
#include "ptsim/optics/compile.hpp"
#include "ptsim/tomo/json.hpp"

using namespace ptsim;
using namespace ptsim::optics;

namespace {

tomo::Json transform_json(const ModeTransform &t) {
    return {{"sources", t.sources}, {"projector", t.projector}, {"matrix", tomo::matrix_json(t.op.matrix())}};
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"circ: optical circuit tools"};
    app.require_subcommand(1);
    std::string file;
    auto *parse = app.add_subcommand("parse", "Parse and validate a circuit, print its normalized form");
    parse->add_option("file", file, ".oct file")->required()->check(CLI::ExistingFile);

    bool dump = false, no_fold = false;
    std::map<std::string, double> angles;
    auto *comp = app.add_subcommand("compile", "Compile a circuit to 4x4 mode operators");
    comp->add_option("file", file, ".oct file")->required()->check(CLI::ExistingFile);
    comp->add_flag("--dump-matrices", dump, "emit every transform matrix");
    comp->add_flag("--no-fold", no_fold, "keep one transform per element");
    comp->add_option("--angle", angles, "LABEL=degrees override")->delimiter(',');

    if (int rc = tools::parse_cli(app, argc, argv)) return rc < 0 ? 0 : rc;

    return tools::guarded([&]() -> int {
        Circuit c;
        try {
            c = load_circuit(file);
        } catch (const ParseError &e) {
            std::cerr << file << ":" << e.what() << "\n";
            return tools::kConfig;
        } catch (const SemanticError &e) {
            std::cerr << file << ":" << e.what() << "\n";
            return tools::kConfig;
        }
        if (*parse) {
            std::cout << print_circuit(c);
            return tools::kOk;
        }
        CompiledCircuit cc = compile(c, AngleMap(angles.begin(), angles.end()), !no_fold);
        tomo::Json j;
        j["source"] = tomo::Json::array();
        if (dump)
            for (const auto &t : cc.source) j["source"].push_back(transform_json(t));
        j["arms"] = tomo::Json::array();
        for (std::size_t a = 0; a < cc.arms.size(); ++a) {
            tomo::Json arm{{"dichroic", cc.arms[a].dichroic}, {"detector", cc.arms[a].detector}};
            if (dump) {
                arm["transforms"] = tomo::Json::array();
                for (const auto &t : cc.arms[a].transforms) arm["transforms"].push_back(transform_json(t));
            }
            arm["kraus"] = tomo::matrix_json(cc.kraus(a).matrix());
            if (!cc.arms[a].detector.empty()) {
                arm["povm"] = tomo::matrix_json(cc.povm(a).matrix());
                arm["emission_povm"] = tomo::matrix_json(cc.emission_povm(a).matrix());
            }
            j["arms"].push_back(arm);
        }
        std::cout << j.dump(2) << "\n";
        return tools::kOk;
    });
}
