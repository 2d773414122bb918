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

#include "ptsim/optics/compile.hpp"

#include <cmath>
#include <set>

#include "ptsim/optics/jones.hpp"
#include "ptsim/qstate/ops.hpp"

namespace ptsim::optics {

namespace {

CMatrix path_projector(std::size_t p) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) = 1.0;
    return m;
}

CMatrix on_path(PathSelector sel, const CMatrix &j) {
    if (sel == PathSelector::BOTH) return kron(CMatrix::Identity(2, 2), j);
    std::size_t s = sel == PathSelector::UPPER ? 0 : 1;
    return kron(path_projector(s), j) + kron(path_projector(1 - s), CMatrix::Identity(2, 2));
}

std::string source_name(const OpticalElement &e) {
    return e.label.empty() ? std::string(kind_name(e.kind)) : e.label;
}

bool is_projector_kind(ElementKind k) { return k == ElementKind::POLARIZER || k == ElementKind::DETECTOR; }

void append(std::vector<ModeTransform> &out, const OpticalElement &e, bool fold) {
    if (e.kind == ElementKind::DICHROIC) return;
    ModeTransform t{lower(e), is_projector_kind(e.kind), {source_name(e)}};
    if (fold && !t.projector && !out.empty() && !out.back().projector) {
        auto &prev = out.back();
        prev.op = t.op * prev.op;
        prev.sources.push_back(t.sources.front());
        return;
    }
    out.push_back(std::move(t));
}

Operator product(const std::vector<ModeTransform> &ts, Operator acc) {
    for (const auto &t : ts) acc = t.op * acc;
    return acc;
}

}  // namespace

Operator calcite_merge() {
    // columns: |U,H>, |U,V>, |L,H>, |L,V>
    CMatrix m = CMatrix::Zero(4, 4);
    m(0, 0) = 1.0;
    m(3, 1) = 1.0;
    m(2, 2) = 1.0;
    m(1, 3) = -1.0;
    return Operator(m);
}

Operator lower(const OpticalElement &e) {
    auto angle = [&] {
        if (!e.angle) throw InvalidInput(std::string(kind_name(e.kind)) + " without an angle");
        return *e.angle;
    };
    CMatrix m;
    switch (e.kind) {
        case ElementKind::HWP:
        case ElementKind::SEMICIRCLE_HWP:
            m = on_path(e.path, hwp_matrix(angle()));
            break;
        case ElementKind::QWP:
            m = on_path(e.path, qwp_matrix(angle()));
            break;
        case ElementKind::POLARIZER:
            m = on_path(e.path, polarizer_projector(angle()).matrix());
            break;
        case ElementKind::CALCITE_MERGE:
            m = calcite_merge().matrix();
            break;
        case ElementKind::CALCITE_SPLIT:
            m = calcite_merge().matrix().adjoint();
            break;
        case ElementKind::DICHROIC:
            m = CMatrix::Identity(4, 4);
            break;
        case ElementKind::DETECTOR:
            m = kron(path_projector(e.path == PathSelector::LOWER ? 1 : 0), CMatrix::Identity(2, 2));
            break;
    }
    return Operator(normalize_phase(m));
}

Operator CompiledCircuit::kraus(std::size_t arm) const {
    if (arm >= arms.size()) throw InvalidInput("arm index out of range");
    return product(arms[arm].transforms, product(source, Operator::identity(kModeDim)));
}

Operator CompiledCircuit::povm(std::size_t arm) const {
    Operator k = kraus(arm);
    return k.adjoint() * k;
}

Operator CompiledCircuit::emission_povm(std::size_t arm) const {
    const CMatrix e = povm(arm).matrix();
    // |U,H> = 0, |L,H> = 2
    return Operator(2, {e(0, 0), e(0, 2), e(2, 0), e(2, 2)});
}

CompiledCircuit compile(const Circuit &c, const AngleMap &angles, bool fold) {
    std::set<std::string> used;
    CompiledCircuit out;
    std::vector<ModeTransform> *target = &out.source;
    bool any_dichroic = false;
    for (const auto &e : c.elements)
        if (e.kind == ElementKind::DICHROIC) any_dichroic = true;
    if (!any_dichroic) {
        out.arms.emplace_back();
        target = &out.arms.back().transforms;
    }
    for (OpticalElement e : c.elements) {
        if (auto it = angles.find(e.label); !e.label.empty() && it != angles.end()) {
            if (!kind_takes_angle(e.kind)) throw InvalidInput("angle override for angle-free element " + e.label);
            if (!std::isfinite(it->second)) throw InvalidInput("non-finite angle override for " + e.label);
            e.angle = normalize_angle(it->second);
            used.insert(e.label);
        }
        if (e.kind == ElementKind::DICHROIC) {
            out.arms.emplace_back();
            out.arms.back().dichroic = e.label;
            target = &out.arms.back().transforms;
            continue;
        }
        if (e.kind == ElementKind::DETECTOR && !out.arms.empty()) out.arms.back().detector = e.label;
        append(*target, e, fold);
    }
    for (const auto &[label, _] : angles)
        if (!used.count(label)) throw InvalidInput("angle override names no element: " + label);
    return out;
}

Operator bell_projector(double hwp3_deg, double p2_deg) {
    OpticalElement hwp{ElementKind::HWP, normalize_angle(hwp3_deg), PathSelector::BOTH, "HWP3"};
    OpticalElement pol{ElementKind::POLARIZER, normalize_angle(p2_deg), PathSelector::BOTH, "P2"};
    OpticalElement det{ElementKind::DETECTOR, std::nullopt, PathSelector::BOTH, "APD2"};
    Operator k = lower(det) * lower(pol) * calcite_merge() * lower(hwp);
    return k.adjoint() * k;
}

const std::vector<BellSetting> &canonical_bell_settings() {
    static const std::vector<BellSetting> s = {
        {"phi+", 0.0, 45.0}, {"phi-", 0.0, 135.0}, {"psi+", 45.0, 135.0}, {"psi-", 45.0, 45.0}};
    return s;
}

std::optional<AngleMap> solve_analyzer(const Circuit &c, std::size_t arm, const std::vector<std::string> &free_labels,
                                       const Operator &target, const AngleMap &fixed, double step_deg, double tol) {
    if (step_deg <= 0.0) throw InvalidInput("analyzer grid step must be positive");
    const auto steps = static_cast<std::size_t>(std::ceil(180.0 / step_deg - 1e-9));
    std::vector<std::size_t> idx(free_labels.size(), 0);
    while (true) {
        AngleMap a = fixed;
        for (std::size_t k = 0; k < idx.size(); ++k) a[free_labels[k]] = static_cast<double>(idx[k]) * step_deg;
        Operator e = compile(c, a).emission_povm(arm);
        if (e.max_abs_diff(target) <= tol) return a;
        std::size_t k = idx.size();
        while (k > 0) {
            --k;
            if (++idx[k] < steps) break;
            idx[k] = 0;
            if (k == 0) return std::nullopt;
        }
        if (idx.empty()) return std::nullopt;
    }
}

}  // namespace ptsim::optics
