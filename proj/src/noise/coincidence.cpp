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

#include "ptsim/noise/coincidence.hpp"

#include <cmath>

#include "ptsim/errors.hpp"
#include "ptsim/qstate/ops.hpp"

namespace ptsim::noise {

namespace {

// Transmission of unpolarized light entering at the arm's last polarizer,
// relative to 1/2.
double arm_noise_marginal(const optics::CompiledArm &arm) {
    const auto &ts = arm.transforms;
    if (ts.empty() || !ts.back().projector) return 1.0;
    const CMatrix &det = ts.back().op.matrix();
    CMatrix pol = CMatrix::Identity(4, 4);
    if (ts.size() >= 2 && ts[ts.size() - 2].projector) pol = ts[ts.size() - 2].op.matrix();
    double t = (det * pol).trace().real() / det.trace().real();
    return t / 0.5;
}

// Emission-mode diagonal of the Stokes POVM: <x,H|E|x,H> for x = U, L.
double stokes_diag(const Operator &e, std::size_t path) {
    auto i = static_cast<std::size_t>(2 * path);
    return e(i, i).real();
}

}  // namespace

DetectionPovms detection_povms(const optics::CompiledCircuit &c) {
    if (c.arms.size() != 2 || c.arms[0].detector.empty() || c.arms[1].detector.empty())
        throw InvalidInput("pipeline needs a Stokes arm and an anti-Stokes arm, each ending in a detector");
    DetectionPovms d;
    d.stokes = c.povm(0);
    d.anti_stokes = c.emission_povm(1);
    d.noise_marginal = arm_noise_marginal(c.arms[0]) * arm_noise_marginal(c.arms[1]);
    return d;
}

double true_coincidence(const JointState &s, const DetectionPovms &d, const NoiseParams &p) {
    const double eta = p.eta_det_s * p.eta_det_as * p.eta_read;
    const CMatrix joint = kron(d.stokes.matrix(), d.anti_stokes.matrix());
    double single = (joint * s.rho.matrix()).trace().real();

    // Multi-pair sectors contribute incoherent path combinations.
    double sU = stokes_diag(d.stokes, 0), sL = stokes_diag(d.stokes, 1);
    double aU = d.anti_stokes(0, 0).real(), aL = d.anti_stokes(1, 1).real();
    double both = (sU + sL) * (aU + aL);
    double same = 2.0 * (sU * aU + sL * aL);
    const SectorWeights &w = s.weights;
    double multi = (w.both_paths * both + w.double_pair * same) * s.retrieval;
    return eta * (w.single * single + multi);
}

double uu_reference_signal(const JointState &s, const NoiseParams &p) {
    NoiseParams q = p;
    q.eta_read = 1.0;
    DetectionPovms uu;
    CMatrix st = CMatrix::Zero(4, 4);
    st(0, 0) = 1.0;  // |U,H>
    uu.stokes = Operator(st);
    uu.anti_stokes = Operator(2, {1.0, 0.0, 0.0, 0.0});
    return true_coincidence(s, uu, q);
}

SettingProbabilities coincidence_probabilities(const JointState &s, const optics::CompiledCircuit &c,
                                               const NoiseParams &p, std::string setting_id, AnalyzerAngles angles) {
    DetectionPovms d = detection_povms(c);
    SettingProbabilities out;
    out.setting_id = std::move(setting_id);
    out.angles = angles;
    out.p_true = true_coincidence(s, d, p);
    const double floor = std::isinf(p.sbr) ? 0.0 : uu_reference_signal(s, p) / p.sbr;
    out.p_accidental = floor * d.noise_marginal;

    const SectorWeights &w = s.weights;
    const double noise_single = std::sqrt(out.p_accidental);
    double sU = stokes_diag(d.stokes, 0), sL = stokes_diag(d.stokes, 1);
    double aU = d.anti_stokes(0, 0).real(), aL = d.anti_stokes(1, 1).real();
    CMatrix rho_s = partial_trace(s.rho.matrix(), {4, 2}, {0});
    CMatrix rho_n = partial_trace(s.rho.matrix(), {4, 2}, {1});
    double stokes = (w.single + w.unretrieved) * (d.stokes.matrix() * rho_s).trace().real() +
                    (w.both_paths + w.double_pair) * (sU + sL);
    double anti = w.single * (d.anti_stokes.matrix() * rho_n).trace().real() +
                  (w.both_paths + w.double_pair) * (aU + aL) * s.retrieval;
    out.p_singles_s = std::min(1.0, p.eta_det_s * stokes + noise_single);
    out.p_singles_as = std::min(1.0, p.eta_det_as * p.eta_read * anti + noise_single);
    return out;
}

}  // namespace ptsim::noise
