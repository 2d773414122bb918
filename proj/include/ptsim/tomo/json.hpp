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

#ifndef PTSIM_TOMO_JSON_HPP
#define PTSIM_TOMO_JSON_HPP

#include <nlohmann/json.hpp>

#include "ptsim/tomo/bootstrap.hpp"
#include "ptsim/tomo/state.hpp"
#include "ptsim/tomo/visibility.hpp"

namespace ptsim::tomo {

using Json = nlohmann::json;

/// Nested rows of [re, im].
Json matrix_json(const CMatrix &m);
CMatrix matrix_from_json(const Json &j);

Json diagnostics_json(const Diagnostics &d);
Json state_json(const StateEstimate &e);
Json process_json(const ProcessEstimate &e);
Json visibility_json(const VisibilityFit &v);
Json bootstrap_json(const BootstrapResult &b);

}  // namespace ptsim::tomo

#endif
