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

#ifndef PTSIM_OPTICS_CIRCUIT_HPP
#define PTSIM_OPTICS_CIRCUIT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptsim/errors.hpp"

namespace ptsim::optics {

enum class ElementKind { HWP, QWP, POLARIZER, CALCITE_SPLIT, CALCITE_MERGE, SEMICIRCLE_HWP, DICHROIC, DETECTOR };
enum class PathSelector { UPPER, LOWER, BOTH };

std::string_view kind_name(ElementKind k);
bool kind_takes_angle(ElementKind k);

struct OpticalElement {
    ElementKind kind = ElementKind::HWP;
    std::optional<double> angle;  // degrees, in [0, 180)
    PathSelector path = PathSelector::BOTH;
    std::string label;
    int line = 0;  // source line, 0 when built in code

    bool operator==(const OpticalElement &o) const {
        return kind == o.kind && angle == o.angle && path == o.path && label == o.label;
    }
};

/// Mode space is fixed: paths {U, L} x polarizations {H, V}, index 2*path + pol.
struct Circuit {
    std::vector<OpticalElement> elements;

    bool operator==(const Circuit &o) const { return elements == o.elements; }
};

/// Syntax error with its position and the set of tokens that would have been accepted.
class ParseError : public InvalidInput {
  public:
    ParseError(int line, int column, std::string found, std::vector<std::string> expected);
    int line() const { return line_; }
    int column() const { return column_; }
    const std::vector<std::string> &expected() const { return expected_; }

  private:
    int line_, column_;
    std::vector<std::string> expected_;
};

class SemanticError : public InvalidInput {
  public:
    SemanticError(int line, const std::string &what);
    int line() const { return line_; }

  private:
    int line_;
};

double normalize_angle(double deg);

Circuit parse_circuit(std::string_view source);
Circuit load_circuit(const std::string &path);

/// Checks the Circuit invariants; throws SemanticError.
void validate(const Circuit &c);

/// One element per line in the .oct grammar; parse_circuit(print_circuit(c)) == c.
std::string print_circuit(const Circuit &c);

}  // namespace ptsim::optics

#endif
