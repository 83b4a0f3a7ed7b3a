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

#include "oqs/circuit.hpp"

namespace oqs {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(GateNames, RoundTripAndAliases) {
    for (auto k : {GateKind::I, GateKind::X, GateKind::SX, GateKind::SXDG, GateKind::H, GateKind::RY, GateKind::RZ,
                   GateKind::CNOT, GateKind::CRY}) {
        EXPECT_EQ(parse_gate_kind(gate_name(k)), k);
    }
    EXPECT_EQ(parse_gate_kind("CX"), GateKind::CNOT);
    EXPECT_EQ(parse_gate_kind("id"), GateKind::I);
    EXPECT_THROW(parse_gate_kind("toffoli"), std::invalid_argument);
}

TEST(GateInstance, ValidationErrors) {
    EXPECT_THROW(make_gate(GateKind::CNOT, {0}), std::invalid_argument);
    EXPECT_THROW(make_gate(GateKind::CNOT, {1, 1}), std::invalid_argument);
    EXPECT_THROW(make_gate(GateKind::RZ, {0}), std::invalid_argument);
    EXPECT_THROW(make_gate(GateKind::RY, {0}, {std::nan("")}), std::invalid_argument);
    Circuit c(2);
    EXPECT_THROW(c.append(GateKind::X, {2}), std::out_of_range);
}

TEST(GateMatrix, UnitaryForEveryKind) {
    const std::vector<GateInstance> gates = {
        make_gate(GateKind::I, {0}),          make_gate(GateKind::X, {0}),
        make_gate(GateKind::SX, {0}),         make_gate(GateKind::SXDG, {0}),
        make_gate(GateKind::H, {0}),          make_gate(GateKind::RY, {0}, {0.4}),
        make_gate(GateKind::RZ, {0}, {1.3}),  make_gate(GateKind::CNOT, {0, 1}),
        make_gate(GateKind::CRY, {0, 1}, {2.1}),
    };
    for (const auto &g : gates) {
        const auto u = gate_matrix(g);
        EXPECT_LT(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(u.rows())), 1e-14) << gate_name(g.kind);
        EXPECT_LT(max_abs_diff(gate_matrix(g.inverse()), u.adjoint()), 1e-14) << gate_name(g.kind);
    }
}

TEST(GateMatrix, Conventions) {
    const auto sx = gate_matrix(make_gate(GateKind::SX, {0}));
    EXPECT_LT(max_abs_diff(sx * sx, pauli::X()), 1e-15);
    const auto rz = gate_matrix(make_gate(GateKind::RZ, {0}, {kPi}));
    EXPECT_LT(max_abs_diff(rz, ComplexMatrix{{Complex(0, -1), 0}, {0, Complex(0, 1)}}), 1e-15);
    const auto ry = gate_matrix(make_gate(GateKind::RY, {0}, {kPi}));
    EXPECT_LT(max_abs_diff(ry, ComplexMatrix{{0, -1}, {1, 0}}), 1e-15);
    const auto cnot = gate_matrix(make_gate(GateKind::CNOT, {0, 1}));
    EXPECT_EQ(cnot(3, 2), Complex(1));
    EXPECT_EQ(cnot(1, 1), Complex(1));
    const auto cry = gate_matrix(make_gate(GateKind::CRY, {0, 1}, {kPi}));
    EXPECT_NEAR(std::abs(cry(3, 2)), 1.0, 1e-15);
    EXPECT_EQ(cry(0, 0), Complex(1));
}

TEST(CircuitUnitary, QubitZeroIsMostSignificant) {
    Circuit c(2);
    c.append(GateKind::X, {0});
    EXPECT_LT(max_abs_diff(circuit_unitary(c), kron(pauli::X(), pauli::I())), 1e-15);
    Circuit rev(2);
    rev.append(GateKind::CNOT, {1, 0});
    const auto u = circuit_unitary(rev);
    // |01> -> |11>
    EXPECT_EQ(u(3, 1), Complex(1));
}

TEST(CircuitUnitary, InverseComposesToIdentity) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    Circuit c(3);
    for (int k = 0; k < 30; k++) {
        switch (k % 5) {
            case 0:
                c.append(GateKind::H, {static_cast<std::size_t>(k % 3)});
                break;
            case 1:
                c.append(GateKind::CRY, {0, 2}, {angle(gen)});
                break;
            case 2:
                c.append(GateKind::SX, {1});
                break;
            case 3:
                c.append(GateKind::RZ, {2}, {angle(gen)});
                c.barrier();
                break;
            default:
                c.append(GateKind::CNOT, {2, 1});
        }
    }
    Circuit round_trip = c;
    round_trip.extend(c.inverse());
    EXPECT_LT(max_abs_diff(circuit_unitary(round_trip), ComplexMatrix::identity(8)), 1e-12);
    EXPECT_EQ(c.inverse().inverse(), c);
}

TEST(CircuitUnitary, TooManyQubitsThrows) {
    EXPECT_THROW(circuit_unitary(Circuit(7)), std::invalid_argument);
}

TEST(Depth, LayersAndBarriers) {
    Circuit c(3);
    c.append(GateKind::H, {0});
    c.append(GateKind::H, {1});
    EXPECT_EQ(depth(c), 1u);
    c.append(GateKind::CNOT, {0, 1});
    EXPECT_EQ(depth(c), 2u);
    c.append(GateKind::X, {2});
    EXPECT_EQ(depth(c), 2u);
    c.barrier();
    c.append(GateKind::X, {2});
    EXPECT_EQ(depth(c), 3u);
    EXPECT_EQ(depth(Circuit(4)), 0u);
}

TEST(GateCounts, CountsByName) {
    Circuit c(2);
    c.append(GateKind::CNOT, {0, 1});
    c.append(GateKind::CNOT, {1, 0});
    c.barrier();
    c.append(GateKind::RZ, {0}, {0.1});
    const auto counts = gate_counts(c);
    EXPECT_EQ(counts.at(std::string(gate_name(GateKind::CNOT))), 2u);
    EXPECT_EQ(counts.at(std::string(gate_name(GateKind::RZ))), 1u);
    EXPECT_EQ(c.gate_count(), 3u);
    EXPECT_EQ(c.without_barriers().size(), 3u);
}

TEST(CircuitJson, RoundTrip) {
    Circuit c(3, "demo");
    c.append(GateKind::CRY, {0, 2}, {0.125});
    c.barrier();
    c.append(GateKind::SXDG, {1});
    const auto doc = to_json(c);
    EXPECT_EQ(circuit_from_json(doc), c);
    EXPECT_EQ(circuit_from_json(nlohmann::ordered_json::parse(doc.dump())), c);
}

TEST(CircuitJson, RejectsMalformed) {
    EXPECT_THROW(circuit_from_json(nlohmann::ordered_json::parse(R"({"ops": []})")), std::invalid_argument);
    EXPECT_THROW(circuit_from_json(nlohmann::ordered_json::parse(R"({"n_qubits": 1, "ops": ["fence"]})")),
                 std::invalid_argument);
    EXPECT_THROW(
        circuit_from_json(nlohmann::ordered_json::parse(R"({"n_qubits": 1, "ops": [{"kind": "x", "qubits": [3]}]})")),
        std::out_of_range);
}

TEST(Extend, WidensRegister) {
    Circuit a(1);
    Circuit b(3);
    b.append(GateKind::X, {2});
    a.extend(b);
    EXPECT_EQ(a.n_qubits(), 3u);
    EXPECT_EQ(a.gate_count(), 1u);
}

}  // namespace
}  // namespace oqs
