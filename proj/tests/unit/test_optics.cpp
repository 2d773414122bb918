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

#include <cmath>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "ptsim/optics/circuit.hpp"
#include "ptsim/optics/compile.hpp"
#include "ptsim/optics/jones.hpp"
#include "ptsim/qstate/ops.hpp"
#include "ptsim/qstate/random.hpp"

using namespace ptsim;
using namespace ptsim::optics;

namespace {

const std::string kCircuits = PTSIM_CIRCUIT_DIR;

double diff(const CMatrix &a, const CMatrix &b) { return (a - b).cwiseAbs().maxCoeff(); }

// Equal up to a global phase.
double diff_up_to_phase(const CMatrix &a, const CMatrix &b) {
    cplx ov = (b.adjoint() * a).trace();
    cplx ph = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1.0);
    return diff(a, b * ph);
}

CMatrix ket(std::initializer_list<cplx> v) {
    CVector k(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (auto x : v) k(i++) = x;
    return k;
}

// Mode vectors on (path x pol): |UH>, |UV>, |LH>, |LV>.
CMatrix mode(int path, int pol) {
    CMatrix k = CMatrix::Zero(4, 1);
    k(2 * path + pol, 0) = 1.0;
    return k;
}

CMatrix rank1(const CMatrix &k) {
    CMatrix n = k / k.norm();
    return n * n.adjoint();
}

// Bell analyzer written out with textbook Jones matrices.
CMatrix bell_oracle(double h_deg, double p_deg) {
    double h = h_deg * std::numbers::pi / 180.0, p = p_deg * std::numbers::pi / 180.0;
    CMatrix hwp(2, 2), pol(2, 2);
    hwp << std::cos(2 * h), std::sin(2 * h), std::sin(2 * h), -std::cos(2 * h);
    pol << std::cos(p) * std::cos(p), std::cos(p) * std::sin(p), std::cos(p) * std::sin(p), std::sin(p) * std::sin(p);
    CMatrix merge = mode(0, 0) * mode(0, 0).adjoint() + mode(1, 0) * mode(1, 0).adjoint() -
                    mode(0, 1) * mode(1, 1).adjoint() + mode(1, 1) * mode(0, 1).adjoint();
    CMatrix up = CMatrix::Zero(2, 2);
    up(0, 0) = 1.0;
    CMatrix k = kron(up, pol) * merge * kron(CMatrix::Identity(2, 2), hwp);
    return k.adjoint() * k;
}

}  // namespace

TEST(jones_hwp, examples) {
    EXPECT_LE(diff(jones_hwp(0).matrix(), gates::Z().matrix()), 1e-15);
    EXPECT_LE(diff(jones_hwp(45).matrix(), gates::X().matrix()), 1e-15);
    EXPECT_LE(diff(jones_hwp(22.5).matrix(), gates::Hadamard().matrix()), 1e-15);
}

TEST(jones_hwp, real_orthogonal_det_minus_one) {
    for (double t = -200.0; t < 400.0; t += 7.3) {
        CMatrix m = jones_hwp(t).matrix();
        EXPECT_LE(m.imag().cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_LE(diff(m.adjoint() * m, CMatrix::Identity(2, 2)), 1e-12);
        EXPECT_NEAR(m.determinant().real(), -1.0, 1e-12);
    }
}

TEST(jones_hwp, period_ninety) {
    for (double t = 0.0; t < 360.0; t += 3.7) EXPECT_LE(diff(jones_hwp(t + 90).matrix(), jones_hwp(t).matrix()), 1e-12);
    for (double t : {0.0, 45.0, 22.5, 90.0, 135.0}) {
        EXPECT_LE(diff(jones_hwp(t + 90).matrix(), jones_hwp(t).matrix()), 1e-12);
    }
}

TEST(jones_qwp, examples) {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = cplx(0, 1);
    EXPECT_LE(diff_up_to_phase(jones_qwp(0).matrix(), d), 1e-15);
    // Circular output; with diag(1, i) at 0 degrees the handedness is (|H> - i|V>)/sqrt2.
    CMatrix out = jones_qwp(45).matrix() * states::qubit("H").amplitudes();
    EXPECT_NEAR(std::norm(out(0, 0)), 0.5, 1e-15);
    EXPECT_NEAR(std::norm(out(1, 0)), 0.5, 1e-15);
    EXPECT_LE(diff_up_to_phase(out, states::qubit("R").amplitudes()), 1e-15);
    CMatrix q = jones_qwp(30).matrix();
    EXPECT_LE(diff_up_to_phase(q * q, jones_hwp(30).matrix()), 1e-12);
}

TEST(jones_qwp, unitary_and_squares_to_hwp) {
    for (double t = -90.0; t < 270.0; t += 11.1) {
        Operator q = jones_qwp(t);
        EXPECT_TRUE(q.is_unitary(1e-12));
        EXPECT_LE(diff_up_to_phase((q * q).matrix(), jones_hwp(t).matrix()), 1e-12);
    }
}

TEST(polarizer, examples) {
    EXPECT_LE(diff(polarizer_projector(0).matrix(), states::qubit("H").projector().matrix()), 1e-15);
    EXPECT_LE(diff(polarizer_projector(45).matrix(), states::qubit("+").projector().matrix()), 1e-15);
    CVector out = polarizer_projector(90).matrix() * jones_hwp(22.5).matrix() * states::qubit("H").amplitudes();
    EXPECT_NEAR(out.squaredNorm(), 0.5, 1e-15);
}

TEST(polarizer, rank_one_projector) {
    for (double t = 0.0; t < 180.0; t += 9.5) {
        Operator p = polarizer_projector(t);
        EXPECT_TRUE(p.is_projector(1e-12));
        EXPECT_NEAR(p.matrix().trace().real(), 1.0, 1e-12);
    }
}

TEST(parse_circuit, single_element) {
    Circuit c = parse_circuit("hwp @ 22.5");
    ASSERT_EQ(c.elements.size(), 1u);
    EXPECT_EQ(c.elements[0].kind, ElementKind::HWP);
    EXPECT_EQ(*c.elements[0].angle, 22.5);
    EXPECT_EQ(c.elements[0].path, PathSelector::BOTH);
}

TEST(parse_circuit, entanglement_golden) {
    using K = ElementKind;
    using P = PathSelector;
    std::vector<OpticalElement> golden = {
        {K::CALCITE_SPLIT, std::nullopt, P::BOTH, "C1"},
        {K::SEMICIRCLE_HWP, 0.0, P::UPPER, "SHWP_U"},
        {K::SEMICIRCLE_HWP, 45.0, P::LOWER, "SHWP_L"},
        {K::DICHROIC, std::nullopt, P::BOTH, "DM1"},
        {K::CALCITE_MERGE, std::nullopt, P::BOTH, "C2"},
        {K::QWP, 0.0, P::BOTH, "QWP3"},
        {K::POLARIZER, 0.0, P::BOTH, "P2"},
        {K::DETECTOR, std::nullopt, P::BOTH, "APD2"},
        {K::DICHROIC, std::nullopt, P::BOTH, "DM2"},
        {K::CALCITE_MERGE, std::nullopt, P::BOTH, "C3"},
        {K::HWP, 0.0, P::BOTH, "HWP5"},
        {K::QWP, 0.0, P::BOTH, "QWP2"},
        {K::POLARIZER, 0.0, P::BOTH, "P3"},
        {K::DETECTOR, std::nullopt, P::BOTH, "APD1"},
    };
    Circuit c = load_circuit(kCircuits + "/fig2_entanglement.oct");
    ASSERT_EQ(c.elements.size(), 14u);
    EXPECT_EQ(c.elements, golden);
}

TEST(parse_circuit, teleport_golden_loads) {
    Circuit c = load_circuit(kCircuits + "/fig2_teleport.oct");
    EXPECT_EQ(c.elements.size(), 19u);
    CompiledCircuit cc = compile(c);
    EXPECT_EQ(cc.arms.size(), 2u);
    EXPECT_EQ(cc.arms[0].detector, "APD2");
    EXPECT_EQ(cc.arms[1].detector, "APD1");
}

TEST(parse_circuit, unterminated_path) {
    try {
        parse_circuit("calcite split\npolarizer @ 45 path=U");
        FAIL();
    } catch (const SemanticError &e) {
        EXPECT_NE(std::string(e.what()).find("unterminated path L"), std::string::npos);
    }
    EXPECT_NO_THROW(parse_circuit("calcite split\npolarizer @ 45 path=U\ncalcite merge"));
    EXPECT_NO_THROW(parse_circuit("calcite split\npolarizer @ 45 path=U\ndetector path=L"));
    EXPECT_THROW(parse_circuit("calcite split\ndichroic\ncalcite merge\ndichroic\ndetector"), SemanticError);
}

TEST(parse_circuit, syntax_error_position_and_expected_set) {
    try {
        parse_circuit("hwp @ 10\nqwp @ 5 paht=U\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_EQ(e.column(), 9);
        std::vector<std::string> want = {"'path'", "'label'", "comment", "end of line"};
        EXPECT_EQ(e.expected(), want);
        EXPECT_NE(std::string(e.what()).find("2:9"), std::string::npos);
    }
    try {
        parse_circuit("calcite mirror");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.column(), 9);
        EXPECT_EQ(e.expected(), (std::vector<std::string>{"'split'", "'merge'"}));
    }
    EXPECT_THROW(parse_circuit("lens @ 3"), ParseError);
    EXPECT_THROW(parse_circuit("hwp @"), ParseError);
    EXPECT_THROW(parse_circuit("hwp @ 1e-3"), ParseError);
    EXPECT_THROW(parse_circuit("hwp @ 0.5 rad"), ParseError);
    EXPECT_THROW(parse_circuit("hwp @ 10 path=X"), ParseError);
    EXPECT_THROW(parse_circuit("hwp @ 10 path=U path=L"), ParseError);
    EXPECT_THROW(parse_circuit("hwp @ 10 label="), ParseError);
    EXPECT_THROW(parse_circuit("hwp ! 10"), ParseError);
}

TEST(parse_circuit, semantic_errors) {
    EXPECT_THROW(parse_circuit("dichroic @ 10"), SemanticError);
    EXPECT_THROW(parse_circuit("calcite split @ 3\ncalcite merge"), SemanticError);
    EXPECT_THROW(parse_circuit("hwp"), SemanticError);
    EXPECT_THROW(parse_circuit("semihwp @ 45"), SemanticError);
    EXPECT_THROW(parse_circuit("calcite merge"), SemanticError);
    EXPECT_THROW(parse_circuit("calcite split\ncalcite split\ncalcite merge"), SemanticError);
    EXPECT_THROW(parse_circuit("detector label=A\ndichroic\ndetector label=A"), SemanticError);
    EXPECT_THROW(parse_circuit("detector label=A\ndetector label=B"), SemanticError);
    EXPECT_THROW(parse_circuit("detector\nhwp @ 3"), SemanticError);
    EXPECT_THROW(parse_circuit("calcite split path=U\ncalcite merge"), SemanticError);
    try {
        parse_circuit("hwp @ 1\n\ndetector label=D\ndichroic\ndetector label=D\n");
        FAIL();
    } catch (const SemanticError &e) {
        EXPECT_EQ(e.line(), 5);
        EXPECT_NE(std::string(e.what()).find("duplicate detector label"), std::string::npos);
    }
}

TEST(parse_circuit, comments_blank_lines_and_normalization) {
    Circuit c = parse_circuit("# header\n\n  hwp @ -22.5   # trailing\npolarizer @ 180\nqwp @ 405.5 label=Q\n");
    ASSERT_EQ(c.elements.size(), 3u);
    EXPECT_EQ(*c.elements[0].angle, 157.5);
    EXPECT_EQ(*c.elements[1].angle, 0.0);
    EXPECT_EQ(*c.elements[2].angle, 45.5);
    EXPECT_EQ(c.elements[2].label, "Q");
}

TEST(print_circuit, round_trip_fixed_point) {
    for (const char *f : {"/fig2_entanglement.oct", "/fig2_teleport.oct"}) {
        Circuit c = load_circuit(kCircuits + f);
        std::string printed = print_circuit(c);
        Circuit again = parse_circuit(printed);
        EXPECT_EQ(again, c);
        EXPECT_EQ(print_circuit(again), printed);
    }
}

TEST(print_circuit, round_trip_random_circuits) {
    Engine rng(9);
    std::uniform_real_distribution<double> ang(-400.0, 400.0);
    std::uniform_int_distribution<int> kind(0, 3);
    for (int t = 0; t < 50; ++t) {
        std::string src;
        int n = 1 + t % 9;
        for (int k = 0; k < n; ++k) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6f", ang(rng));
            switch (kind(rng)) {
                case 0: src += std::string("hwp @ ") + buf + "\n"; break;
                case 1: src += std::string("qwp @ ") + buf + " path=L label=q" + std::to_string(k) + "\n"; break;
                case 2: src += std::string("polarizer @ ") + buf + " path=U\n"; break;
                default: src += std::string("semihwp @ ") + buf + (k % 2 ? " path=U\n" : " path=L\n"); break;
            }
        }
        Circuit c = parse_circuit(src);
        EXPECT_EQ(parse_circuit(print_circuit(c)), c);
    }
}

TEST(compile, hwp_both_paths) {
    CompiledCircuit cc = compile(parse_circuit("hwp @ 45"));
    ASSERT_EQ(cc.arms.size(), 1u);
    ASSERT_EQ(cc.arms[0].transforms.size(), 1u);
    EXPECT_LE(diff(cc.arms[0].transforms[0].op.matrix(), kron(CMatrix::Identity(2, 2), gates::X().matrix())), 1e-15);
}

TEST(compile, semicircle_pair) {
    CompiledCircuit cc = compile(parse_circuit("semihwp @ 0 path=U\nsemihwp @ 45 path=L"));
    ASSERT_EQ(cc.arms[0].transforms.size(), 1u);
    CMatrix u = CMatrix::Zero(2, 2), l = CMatrix::Zero(2, 2);
    u(0, 0) = 1.0;
    l(1, 1) = 1.0;
    CMatrix want = kron(u, gates::Z().matrix()) + kron(l, gates::X().matrix());
    EXPECT_LE(diff(cc.arms[0].transforms[0].op.matrix(), want), 1e-15);
}

TEST(compile, semicircle_keeps_relative_path_phase) {
    // hwp at 90 is -Z; on one path only, that sign is physical.
    Operator t = compile(parse_circuit("semihwp @ 90 path=L")).arms[0].transforms[0].op;
    CVector in = (mode(0, 0) + mode(1, 0)) / std::sqrt(2.0);
    CVector out = t.matrix() * in;
    EXPECT_NEAR(std::abs(out(0) + out(2)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out(0)), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(compile, bell_analyzer_segment_is_phi_plus) {
    CMatrix e = bell_projector(0, 45).matrix();
    CMatrix want = rank1(mode(0, 0) + mode(1, 1));
    EXPECT_LE(diff(e, want), 1e-12);
    EXPECT_LE(diff(e, bell_oracle(0, 45)), 1e-12);
}

TEST(compile, dichroic_is_identity_routing) {
    CompiledCircuit cc = compile(parse_circuit("hwp @ 10\ndichroic label=D\nqwp @ 20"));
    ASSERT_EQ(cc.arms.size(), 1u);
    EXPECT_EQ(cc.arms[0].dichroic, "D");
    EXPECT_LE(diff(cc.kraus(0).matrix(),
                   kron(CMatrix::Identity(2, 2), (jones_qwp(20) * jones_hwp(10)).matrix())), 1e-12);
}

TEST(compile, transforms_are_unitary_or_projectors) {
    for (const char *f : {"/fig2_entanglement.oct", "/fig2_teleport.oct"}) {
        Circuit c = load_circuit(kCircuits + f);
        for (bool fold : {false, true}) {
            CompiledCircuit cc = compile(c, {}, fold);
            auto check = [](const ModeTransform &t) {
                if (t.projector) {
                    EXPECT_TRUE(t.op.is_projector(1e-12));
                } else {
                    EXPECT_TRUE(t.op.is_unitary(1e-12));
                }
            };
            for (const auto &t : cc.source) check(t);
            for (const auto &a : cc.arms)
                for (const auto &t : a.transforms) check(t);
        }
    }
}

TEST(compile, folding_preserves_the_map) {
    Engine rng(15);
    std::uniform_real_distribution<double> ang(0.0, 180.0);
    Circuit c = load_circuit(kCircuits + "/fig2_teleport.oct");
    for (int t = 0; t < 10; ++t) {
        AngleMap a = {{"HWP2", ang(rng)}, {"QWP1", ang(rng)}, {"HWP3", ang(rng)},
                      {"P2", ang(rng)},   {"HWP5", ang(rng)}, {"QWP2", ang(rng)}};
        CompiledCircuit folded = compile(c, a, true), plain = compile(c, a, false);
        EXPECT_LT(folded.arms[0].transforms.size(), plain.arms[0].transforms.size());
        for (std::size_t arm = 0; arm < 2; ++arm) {
            for (int s = 0; s < 5; ++s) {
                CVector v = haar_state(rng, 4).amplitudes();
                EXPECT_LE(diff(folded.kraus(arm).matrix() * v, plain.kraus(arm).matrix() * v), 1e-12);
            }
        }
    }
}

TEST(compile, override_errors) {
    Circuit c = load_circuit(kCircuits + "/fig2_entanglement.oct");
    EXPECT_THROW(compile(c, {{"NOPE", 3.0}}), InvalidInput);
    EXPECT_THROW(compile(c, {{"C2", 3.0}}), InvalidInput);
    EXPECT_THROW(compile(c, {{"P2", std::nan("")}}), InvalidInput);
}

TEST(bell_projector, canonical_settings) {
    CMatrix uh = mode(0, 0), uv = mode(0, 1), lh = mode(1, 0), lv = mode(1, 1);
    EXPECT_LE(diff(bell_projector(0, 45).matrix(), rank1(uh + lv)), 1e-12);
    EXPECT_LE(diff(bell_projector(0, 135).matrix(), rank1(uh - lv)), 1e-12);
    EXPECT_LE(diff(bell_projector(45, 135).matrix(), rank1(uv + lh)), 1e-12);
    EXPECT_LE(diff(bell_projector(45, 45).matrix(), rank1(uv - lh)), 1e-12);
}

TEST(bell_projector, matches_oracle_for_all_angles) {
    for (double h = 0; h < 180; h += 7.5)
        for (double p = 0; p < 180; p += 15) EXPECT_LE(diff(bell_projector(h, p).matrix(), bell_oracle(h, p)), 1e-12);
}

TEST(bell_projector, canonical_set_is_complete_and_orthogonal) {
    const auto &s = canonical_bell_settings();
    CMatrix sum = CMatrix::Zero(4, 4);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CMatrix a = bell_projector(s[i].hwp3, s[i].p2).matrix();
        EXPECT_TRUE(Operator(a).is_projector(1e-12));
        EXPECT_NEAR(a.trace().real(), 1.0, 1e-12);
        sum += a;
        for (std::size_t j = i + 1; j < s.size(); ++j)
            EXPECT_LE((a * bell_projector(s[j].hwp3, s[j].p2).matrix()).cwiseAbs().maxCoeff(), 1e-12);
    }
    EXPECT_LE(diff(sum, CMatrix::Identity(4, 4)), 1e-12);
}

TEST(analyzer, entanglement_arms_reach_six_states) {
    Circuit c = load_circuit(kCircuits + "/fig2_entanglement.oct");
    for (auto l : states::six_labels()) {
        Operator target = states::qubit(l).projector().as_operator();
        auto s = solve_analyzer(c, 0, {"QWP3", "P2"}, target);
        ASSERT_TRUE(s.has_value()) << l;
        EXPECT_LE(compile(c, *s).emission_povm(0).max_abs_diff(target), 1e-9);
        auto a = solve_analyzer(c, 1, {"HWP5", "QWP2"}, target);
        ASSERT_TRUE(a.has_value()) << l;
        EXPECT_LE(compile(c, *a).emission_povm(1).max_abs_diff(target), 1e-9);
    }
}

TEST(analyzer, teleport_bell_outcomes_carry_the_input_up_to_pauli) {
    // With the Stokes path qubit and the phonon in (|UU> + |LL>)/sqrt2, Bob's
    // conditional state is E^T / Tr E for the Stokes emission POVM E.
    Circuit c = load_circuit(kCircuits + "/fig2_teleport.oct");
    const CMatrix frame[4] = {gates::I2().matrix(), gates::Z().matrix(), gates::X().matrix(),
                              (gates::X() * gates::Z()).matrix()};
    for (double h2 : {0.0, 22.5, 45.0, 10.0}) {
        for (double q1 : {0.0, 45.0, 30.0}) {
            CVector in = qwp_matrix(q1) * hwp_matrix(h2) * states::qubit("V").amplitudes();
            CMatrix want = in * in.adjoint();
            const auto &bs = canonical_bell_settings();
            for (std::size_t b = 0; b < bs.size(); ++b) {
                CMatrix e = compile(c, {{"HWP2", h2}, {"QWP1", q1}, {"HWP3", bs[b].hwp3}, {"P2", bs[b].p2}})
                                .emission_povm(0)
                                .matrix();
                EXPECT_NEAR(e.trace().real() / 2.0, 0.25, 1e-12);
                CMatrix bob = e.transpose() / e.trace();
                CMatrix fixed = frame[b] * bob * frame[b].adjoint();
                EXPECT_LE(diff(fixed, want), 1e-12) << bs[b].name << " " << h2 << " " << q1;
            }
        }
    }
}
