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

#ifndef PTSIM_TOOLS_COMMON_HPP
#define PTSIM_TOOLS_COMMON_HPP

#include <exception>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "ptsim/errors.hpp"

namespace ptsim::tools {

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kNonConvergence = 3, kPhysicality = 4 };

/// Runs `body`, mapping exceptions to the documented exit codes.
inline int guarded(const std::function<int()> &body) {
    try {
        return body();
    } catch (const PhysicalityError &e) {
        std::cerr << "error: physicality violation: " << e.what() << "\n";
        return kPhysicality;
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const InvalidInput &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const ConvergenceError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNonConvergence;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOther;
    }
}

inline int parse_cli(CLI::App &app, int argc, char **argv) {
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? -1 : kConfig;
    }
    return 0;
}

}  // namespace ptsim::tools

#endif
