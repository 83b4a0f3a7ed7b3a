// Copyright 2026 The oqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oqs/models.hpp"
#include "oqs/transpile.hpp"
#include "test_util.hpp"

namespace oqs {
namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix product_1q(const std::vector<GateInstance> &gates) {
    ComplexMatrix u = ComplexMatrix::identity(2);
    for (const auto &g : gates) {
        u = gate_matrix(g) * u;
    }
    return u;
}

bool in_basis(const Circuit &c, const BasisSet &basis) {
    for (const auto &op : c.ops()) {
        if (const auto *g = std::get_if<GateInstance>(&op); g && !basis.contains(g->kind)) {
            return false;
        }
    }
    return true;
}

std::size_t cnots(const Circuit &c) {
    const auto counts = gate_counts(c);
    const auto it = counts.find(std::string(gate_name(GateKind::CNOT)));
    return it == counts.end() ? 0 : it->second;
}

TEST(Decompose1q, RzStaysSingleGate) {
    const auto gates = decompose_1q(gate_matrix(make_gate(GateKind::RZ, {0}, {0.7})), 0);
    ASSERT_EQ(gates.size(), 1u);
    EXPECT_EQ(gates[0].kind, GateKind::RZ);
    EXPECT_NEAR(gates[0].params[0], 0.7, 1e-12);
}

TEST(Decompose1q, HadamardThreeGateForm) {
    const auto h = gate_matrix(make_gate(GateKind::H, {0}));
    const auto gates = decompose_1q(h, 0);
    ASSERT_EQ(gates.size(), 3u);
    EXPECT_EQ(gates[0].kind, GateKind::RZ);
    EXPECT_EQ(gates[1].kind, GateKind::SX);
    EXPECT_EQ(gates[2].kind, GateKind::RZ);
    EXPECT_NEAR(gates[0].params[0], kPi / 2, 1e-12);
    EXPECT_NEAR(gates[2].params[0], kPi / 2, 1e-12);
    EXPECT_TRUE(equal_up_to_global_phase(product_1q(gates), h, 1e-12));
}

TEST(Decompose1q, IdentityAndPhaseAreEmpty) {
    EXPECT_TRUE(decompose_1q(ComplexMatrix::identity(2), 0).empty());
    EXPECT_TRUE(decompose_1q(ComplexMatrix::identity(2) * std::polar(1.0, 0.4), 0).empty());
}

TEST(Decompose1q, RandomUnitariesReconstruct) {
    std::mt19937_64 gen(61);
    for (int trial = 0; trial < 1000; trial++) {
        const auto u = testing::random_unitary(2, gen);
        const auto gates = decompose_1q(u, 0);
        EXPECT_LE(gates.size(), 5u);
        for (const auto &g : gates) {
            EXPECT_TRUE(g.kind == GateKind::RZ || g.kind == GateKind::SX);
        }
        EXPECT_TRUE(equal_up_to_global_phase(product_1q(gates), u, 1e-9)) << trial;
    }
}

TEST(Decompose1q, EveryNamedGate) {
    for (auto g : {make_gate(GateKind::X, {0}), make_gate(GateKind::SX, {0}), make_gate(GateKind::SXDG, {0}),
                   make_gate(GateKind::I, {0}), make_gate(GateKind::RY, {0}, {kPi}),
                   make_gate(GateKind::RY, {0}, {-1.1}), make_gate(GateKind::RZ, {0}, {-kPi})}) {
        const auto u = gate_matrix(g);
        EXPECT_TRUE(equal_up_to_global_phase(product_1q(decompose_1q(u, 0)), u, 1e-12)) << gate_name(g.kind);
    }
}

TEST(Decompose1q, RejectsNonUnitary) {
    EXPECT_THROW(decompose_1q(ComplexMatrix{{1, 1}, {0, 1}}, 0), std::invalid_argument);
    EXPECT_THROW(decompose_1q(ComplexMatrix::identity(4), 0), std::invalid_argument);
}

TEST(DecomposeCry, ZeroAngleIsEmpty) {
    EXPECT_TRUE(decompose_cry(0.0, 0, 1).empty());
    EXPECT_TRUE(decompose_cry(4 * kPi, 0, 1).empty());
}

TEST(DecomposeCry, PiFlipsTarget) {
    Circuit c(2);
    for (const auto &g : decompose_cry(kPi, 0, 1)) {
        c.append(g);
    }
    const auto u = circuit_unitary(c);
    // |10> -> |11> up to phase.
    EXPECT_NEAR(std::abs(u(3, 2)), 1.0, 1e-12);
}

TEST(DecomposeCry, RandomAnglesMatch) {
    std::mt19937_64 gen(62);
    std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
    for (int trial = 0; trial < 100; trial++) {
        const double t = angle(gen);
        for (auto [ctl, tgt] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 0}}) {
            Circuit c(2);
            for (const auto &g : decompose_cry(t, ctl, tgt)) {
                c.append(g);
            }
            Circuit ref(2);
            ref.append(GateKind::CRY, {ctl, tgt}, {t});
            EXPECT_TRUE(equal_up_to_global_phase(circuit_unitary(c), circuit_unitary(ref), 1e-10));
        }
    }
}

TEST(NormalizeAngle, Range) {
    EXPECT_NEAR(normalize_angle(3 * kPi / 2), -kPi / 2, 1e-15);
    EXPECT_NEAR(normalize_angle(-kPi / 2), -kPi / 2, 1e-15);
    EXPECT_NEAR(normalize_angle(2 * kPi), 0.0, 1e-15);
    EXPECT_GT(normalize_angle(kPi), 0.0);
}

TEST(Transpile, InBasisCircuitOnlyMergesRz) {
    Circuit c(2);
    c.append(GateKind::SX, {0});
    c.append(GateKind::CNOT, {0, 1});
    c.append(GateKind::I, {1});
    const Circuit expected = c;
    EXPECT_EQ(transpile(c), expected);

    Circuit rz(1);
    rz.append(GateKind::RZ, {0}, {0.25});
    rz.append(GateKind::RZ, {0}, {0.5});
    const auto merged = transpile(rz);
    ASSERT_EQ(merged.size(), 1u);
    EXPECT_NEAR(std::get<GateInstance>(merged.ops()[0]).params[0], 0.75, 1e-15);

    Circuit cancel(1);
    cancel.append(GateKind::RZ, {0}, {0.25});
    cancel.append(GateKind::RZ, {0}, {-0.25});
    EXPECT_EQ(transpile(cancel).size(), 0u);
}

TEST(Transpile, BarriersFenceMerging) {
    Circuit c(1);
    c.append(GateKind::RZ, {0}, {0.1});
    c.barrier();
    c.append(GateKind::RZ, {0}, {0.2});
    const auto t = transpile(c);
    EXPECT_EQ(t.gate_count(), 2u);
    EXPECT_EQ(t.size(), 3u);
}

TEST(Transpile, CollisionCnotsSurviveWithBarriers) {
    for (std::size_t n = 0; n <= 12; n++) {
        const auto m = build_collisional(CollisionParams{0.15, n, true});
        const auto t = transpile(m.full());
        EXPECT_EQ(cnots(t), 2 * n);
        EXPECT_TRUE(in_basis(t, BasisSet{}));
    }
}

TEST(Transpile, CollisionDepthAffineInCollisions) {
    for (bool correlated : {true, false}) {
        std::vector<std::size_t> depths;
        for (std::size_t n = 0; n <= 10; n++) {
            depths.push_back(depth(transpile(build_collisional(CollisionParams{0.15, n, correlated}).full())));
        }
        const std::size_t step = depths[2] - depths[1];
        EXPECT_GT(step, 0u);
        for (std::size_t n = 2; n < depths.size(); n++) {
            EXPECT_EQ(depths[n] - depths[n - 1], step) << "n=" << n;
        }
    }
}

TEST(Transpile, PumpGrowsDepthAndCnots) {
    for (double p : {0.1, 0.5, 0.9}) {
        const auto full = build_zzxx_pump(PumpParams{p, 1, PumpInit::S00}).full();
        const auto t = transpile(full);
        EXPECT_GT(depth(t), depth(full));
        EXPECT_GT(cnots(t), cnots(full));
        for (auto kind : {PumpKind::ZZ, PumpKind::XX}) {
            const auto single = build_pump(kind, PumpParams{p, 1, PumpInit::S00}).full();
            EXPECT_GE(depth(transpile(single)), depth(single));
        }
    }
}

TEST(Transpile, UnitaryEquivalenceAndIdempotence) {
    std::vector<Circuit> suite;
    for (auto kind : {PumpKind::ZZ, PumpKind::XX, PumpKind::ZZXX}) {
        for (auto init : {PumpInit::S00, PumpInit::PsiMinus, PumpInit::S11}) {
            suite.push_back(build_pump(kind, PumpParams{0.3, 1, init}).full());
        }
    }
    suite.push_back(build_pump(PumpKind::ZZ, PumpParams{0.6, 3, PumpInit::PhiPlus}).full());
    for (std::size_t n = 0; n <= 5; n++) {
        suite.push_back(build_collisional(CollisionParams{0.25, n, true}).full());
        suite.push_back(build_collisional(CollisionParams{0.25, n, false}).full());
    }
    for (const auto &c : suite) {
        const auto t = transpile(c);
        EXPECT_TRUE(in_basis(t, BasisSet{})) << c.label();
        EXPECT_TRUE(equal_up_to_global_phase(circuit_unitary(t), circuit_unitary(c), 1e-9)) << c.label();
        EXPECT_EQ(transpile(t), t) << c.label();
    }
}

TEST(Transpile, BasisErrors) {
    EXPECT_THROW(BasisSet::parse("rz,sx"), std::invalid_argument);
    EXPECT_THROW(BasisSet::parse("cx,id,rz,sx,swap"), std::invalid_argument);
    const auto ry_basis = BasisSet::parse("cx, ry, sx");
    EXPECT_TRUE(ry_basis.contains(GateKind::RY));
    Circuit c(1);
    c.append(GateKind::H, {0});
    EXPECT_THROW(transpile(c, ry_basis), std::invalid_argument);
    EXPECT_EQ(BasisSet{}.to_string(), BasisSet::parse(BasisSet{}.to_string()).to_string());
}

TEST(Transpile, MetricsJson) {
    const auto full = build_zzxx_pump(PumpParams{0.5, 1, PumpInit::S00}).full();
    const auto t = transpile(full);
    const auto doc = to_json(transpile_metrics(full, t));
    EXPECT_EQ(doc.at("depth_before").get<std::size_t>(), depth(full));
    EXPECT_EQ(doc.at("depth_after").get<std::size_t>(), depth(t));
    EXPECT_TRUE(doc.at("counts_after").contains(std::string(gate_name(GateKind::SX))));
}

TEST(RelabelQubits, DepthInvariantAndValidated) {
    const auto full = build_zzxx_pump(PumpParams{0.5, 1, PumpInit::S00}).full();
    const auto moved = relabel_qubits(full, {3, 2, 1, 0});
    EXPECT_EQ(depth(moved), depth(full));
    EXPECT_EQ(gate_counts(moved), gate_counts(full));
    EXPECT_THROW(relabel_qubits(full, {0, 0, 1, 2}), std::invalid_argument);
    EXPECT_THROW(relabel_qubits(full, {0, 1}), std::invalid_argument);
}

}  // namespace
}  // namespace oqs
