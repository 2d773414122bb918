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

#ifndef PTSIM_ERRORS_HPP
#define PTSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ptsim {

/// Rejected input: wrong dimensions, out-of-range values, bad labels.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A state or process failed its physicality checks (Hermitian, unit trace, PSD).
struct PhysicalityError : InvalidInput {
    using InvalidInput::InvalidInput;
};

/// Malformed or inconsistent configuration file.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative fit or search hit its iteration budget without meeting its target.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ptsim

#endif
