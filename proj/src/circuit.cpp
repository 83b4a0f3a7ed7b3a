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

#include "oqs/circuit.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "oqs/kernels.hpp"

namespace oqs {

namespace {

struct GateInfo {
    GateKind kind;
    std::string_view name;
    std::size_t arity;
    std::size_t params;
};

constexpr std::array<GateInfo, 9> kGateTable = {{
    {GateKind::I, "I", 1, 0},
    {GateKind::X, "X", 1, 0},
    {GateKind::SX, "SX", 1, 0},
    {GateKind::SXDG, "SXDG", 1, 0},
    {GateKind::H, "H", 1, 0},
    {GateKind::RY, "RY", 1, 1},
    {GateKind::RZ, "RZ", 1, 1},
    {GateKind::CNOT, "CNOT", 2, 0},
    {GateKind::CRY, "CRY", 2, 1},
}};

const GateInfo &info(GateKind kind) {
    for (const auto &g : kGateTable) {
        if (g.kind == kind) {
            return g;
        }
    }
    throw std::invalid_argument("unknown gate kind");
}

}  // namespace

std::string_view gate_name(GateKind kind) {
    return info(kind).name;
}

GateKind parse_gate_kind(std::string_view name) {
    std::string upper(name);
    for (auto &ch : upper) {
        ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    }
    if (upper == "CX") {
        return GateKind::CNOT;
    }
    if (upper == "ID") {
        return GateKind::I;
    }
    for (const auto &g : kGateTable) {
        if (g.name == upper) {
            return g.kind;
        }
    }
    throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

std::size_t gate_arity(GateKind kind) {
    return info(kind).arity;
}

std::size_t gate_param_count(GateKind kind) {
    return info(kind).params;
}

void GateInstance::validate() const {
    const auto &gi = info(kind);
    if (qubits.size() != gi.arity) {
        throw std::invalid_argument(
            std::string(gi.name) + " acts on " + std::to_string(gi.arity) + " qubit(s), got " +
            std::to_string(qubits.size()));
    }
    if (params.size() != gi.params) {
        throw std::invalid_argument(
            std::string(gi.name) + " takes " + std::to_string(gi.params) + " parameter(s), got " +
            std::to_string(params.size()));
    }
    if (qubits.size() == 2 && qubits[0] == qubits[1]) {
        throw std::invalid_argument(std::string(gi.name) + ": control and target must differ");
    }
    for (double p : params) {
        if (!std::isfinite(p)) {
            throw std::invalid_argument(std::string(gi.name) + ": non-finite angle");
        }
    }
}

GateInstance GateInstance::inverse() const {
    GateInstance inv = *this;
    for (auto &p : inv.params) {
        p = -p;
    }
    if (kind == GateKind::SX) {
        inv.kind = GateKind::SXDG;
    } else if (kind == GateKind::SXDG) {
        inv.kind = GateKind::SX;
    }
    return inv;
}

GateInstance make_gate(GateKind kind, std::vector<std::size_t> qubits, std::vector<double> params) {
    GateInstance g{kind, std::move(params), std::move(qubits)};
    g.validate();
    return g;
}

Circuit::Circuit(std::size_t n_qubits, std::string label) : n_qubits_(n_qubits), label_(std::move(label)) {
}

Circuit &Circuit::append(GateInstance gate) {
    gate.validate();
    for (auto q : gate.qubits) {
        if (q >= n_qubits_) {
            throw std::out_of_range(
                "qubit " + std::to_string(q) + " out of range for a " + std::to_string(n_qubits_) +
                "-qubit circuit");
        }
    }
    ops_.emplace_back(std::move(gate));
    return *this;
}

Circuit &Circuit::append(GateKind kind, std::vector<std::size_t> qubits, std::vector<double> params) {
    return append(GateInstance{kind, std::move(params), std::move(qubits)});
}

Circuit &Circuit::barrier() {
    ops_.emplace_back(Barrier{});
    return *this;
}

Circuit &Circuit::extend(const Circuit &other) {
    n_qubits_ = std::max(n_qubits_, other.n_qubits_);
    ops_.insert(ops_.end(), other.ops_.begin(), other.ops_.end());
    return *this;
}

std::size_t Circuit::gate_count() const {
    return static_cast<std::size_t>(std::count_if(ops_.begin(), ops_.end(), [](const Op &op) {
        return std::holds_alternative<GateInstance>(op);
    }));
}

Circuit Circuit::inverse() const {
    Circuit out(n_qubits_, label_);
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        if (const auto *g = std::get_if<GateInstance>(&*it)) {
            out.ops_.emplace_back(g->inverse());
        } else {
            out.ops_.emplace_back(Barrier{});
        }
    }
    return out;
}

Circuit Circuit::without_barriers() const {
    Circuit out(n_qubits_, label_);
    for (const auto &op : ops_) {
        if (std::holds_alternative<GateInstance>(op)) {
            out.ops_.push_back(op);
        }
    }
    return out;
}

ComplexMatrix gate_matrix(const GateInstance &gate) {
    gate.validate();
    const Complex i(0, 1);
    switch (gate.kind) {
        case GateKind::I:
            return pauli::I();
        case GateKind::X:
            return pauli::X();
        case GateKind::SX:
            return {{0.5 * (1.0 + i), 0.5 * (1.0 - i)}, {0.5 * (1.0 - i), 0.5 * (1.0 + i)}};
        case GateKind::SXDG:
            return {{0.5 * (1.0 - i), 0.5 * (1.0 + i)}, {0.5 * (1.0 + i), 0.5 * (1.0 - i)}};
        case GateKind::H: {
            const double s = 1 / std::sqrt(2.0);
            return {{s, s}, {s, -s}};
        }
        case GateKind::RY: {
            const double c = std::cos(gate.params[0] / 2);
            const double s = std::sin(gate.params[0] / 2);
            return {{c, -s}, {s, c}};
        }
        case GateKind::RZ: {
            const double h = gate.params[0] / 2;
            return {{std::polar(1.0, -h), 0}, {0, std::polar(1.0, h)}};
        }
        case GateKind::CNOT:
            return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
        case GateKind::CRY: {
            const double c = std::cos(gate.params[0] / 2);
            const double s = std::sin(gate.params[0] / 2);
            return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, c, -s}, {0, 0, s, c}};
        }
    }
    throw std::invalid_argument("gate_matrix: unknown gate kind");
}

ComplexMatrix circuit_unitary(const Circuit &circuit) {
    const std::size_t n = circuit.n_qubits();
    if (n > 6) {
        throw std::invalid_argument("circuit_unitary: " + std::to_string(n) + " qubits exceeds the limit of 6");
    }
    ComplexMatrix u = ComplexMatrix::identity(std::size_t{1} << n);
    for (const auto &op : circuit.ops()) {
        if (const auto *g = std::get_if<GateInstance>(&op)) {
            kernels::left_multiply(u, gate_matrix(*g), g->qubits, n);
        }
    }
    return u;
}

std::size_t depth(const Circuit &circuit) {
    std::vector<std::size_t> level(circuit.n_qubits(), 0);
    for (const auto &op : circuit.ops()) {
        if (const auto *g = std::get_if<GateInstance>(&op)) {
            std::size_t layer = 0;
            for (auto q : g->qubits) {
                layer = std::max(layer, level[q]);
            }
            for (auto q : g->qubits) {
                level[q] = layer + 1;
            }
        } else {
            const std::size_t top = level.empty() ? 0 : *std::max_element(level.begin(), level.end());
            std::fill(level.begin(), level.end(), top);
        }
    }
    return level.empty() ? 0 : *std::max_element(level.begin(), level.end());
}

std::map<std::string, std::size_t> gate_counts(const Circuit &circuit) {
    std::map<std::string, std::size_t> counts;
    for (const auto &op : circuit.ops()) {
        if (const auto *g = std::get_if<GateInstance>(&op)) {
            counts[std::string(gate_name(g->kind))]++;
        }
    }
    return counts;
}

nlohmann::ordered_json to_json(const Circuit &circuit) {
    nlohmann::ordered_json doc;
    doc["n_qubits"] = circuit.n_qubits();
    doc["label"] = circuit.label();
    auto ops = nlohmann::ordered_json::array();
    for (const auto &op : circuit.ops()) {
        if (const auto *g = std::get_if<GateInstance>(&op)) {
            nlohmann::ordered_json entry;
            entry["kind"] = gate_name(g->kind);
            entry["params"] = g->params;
            entry["qubits"] = g->qubits;
            ops.push_back(std::move(entry));
        } else {
            ops.push_back("barrier");
        }
    }
    doc["ops"] = std::move(ops);
    return doc;
}

Circuit circuit_from_json(const nlohmann::ordered_json &doc) {
    if (!doc.is_object() || !doc.contains("n_qubits") || !doc.contains("ops")) {
        throw std::invalid_argument("circuit JSON needs 'n_qubits' and 'ops'");
    }
    Circuit c(doc.at("n_qubits").get<std::size_t>(), doc.value("label", std::string{}));
    for (const auto &entry : doc.at("ops")) {
        if (entry.is_string()) {
            if (entry.get<std::string>() != "barrier") {
                throw std::invalid_argument("unknown op '" + entry.get<std::string>() + "'");
            }
            c.barrier();
            continue;
        }
        GateInstance g;
        g.kind = parse_gate_kind(entry.at("kind").get<std::string>());
        g.params = entry.value("params", std::vector<double>{});
        g.qubits = entry.at("qubits").get<std::vector<std::size_t>>();
        c.append(std::move(g));
    }
    return c;
}

}  // namespace oqs
