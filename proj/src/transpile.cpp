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

#include "oqs/transpile.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace oqs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleTol = 1e-12;

bool is_zero_angle(double a) { return std::abs(normalize_angle(a)) < kAngleTol; }

}  // namespace

void BasisSet::validate() const {
    if (!contains(GateKind::CNOT) || !contains(GateKind::SX) ||
        !(contains(GateKind::RZ) || contains(GateKind::RY))) {
        throw std::invalid_argument("basis must contain cx, sx and a parameterized rotation, got " + to_string());
    }
}

BasisSet BasisSet::parse(const std::string &list) {
    BasisSet b;
    b.kinds.clear();
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (!item.empty()) {
            b.kinds.insert(parse_gate_kind(item));
        }
    }
    b.validate();
    return b;
}

std::string BasisSet::to_string() const {
    std::string out;
    for (auto k : kinds) {
        if (!out.empty()) {
            out += ",";
        }
        out += gate_name(k);
    }
    return out;
}

double normalize_angle(double a) {
    double r = std::remainder(a, 2 * kPi);
    if (r <= -kPi) {
        r += 2 * kPi;
    }
    return r;
}

std::vector<GateInstance> decompose_1q(const ComplexMatrix &u, std::size_t qubit) {
    if (u.rows() != 2 || u.cols() != 2) {
        throw std::invalid_argument("decompose_1q: expected a 2x2 matrix");
    }
    if (max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(2)) > 1e-10) {
        throw std::invalid_argument("decompose_1q: matrix is not unitary");
    }
    // Special-unitary representative; the sign ambiguity is a global phase.
    const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    const ComplexMatrix v = u * (1.0 / std::sqrt(det));

    const double c = std::abs(v(0, 0));
    const double s = std::abs(v(1, 0));
    const double theta = 2 * std::atan2(s, c);
    const double sum = c > 1e-14 ? 2 * std::arg(v(1, 1)) : 0.0;
    const double diff = s > 1e-14 ? 2 * std::arg(v(1, 0)) : 0.0;
    const double phi = (sum + diff) / 2;
    const double lambda = (sum - diff) / 2;

    std::vector<GateInstance> out;
    auto rz = [&](double a) {
        if (!is_zero_angle(a)) {
            out.push_back(make_gate(GateKind::RZ, {qubit}, {normalize_angle(a)}));
        }
    };
    auto sx = [&] { out.push_back(make_gate(GateKind::SX, {qubit})); };

    if (std::abs(theta) < 1e-12) {
        rz(phi + lambda);
    } else if (std::abs(theta - kPi / 2) < 1e-12) {
        rz(lambda - kPi / 2);
        sx();
        rz(phi + kPi / 2);
    } else {
        rz(lambda);
        sx();
        rz(theta + kPi);
        sx();
        rz(phi + kPi);
    }
    return out;
}

std::vector<GateInstance> decompose_cry(double theta, std::size_t control, std::size_t target) {
    if (std::abs(std::remainder(theta, 4 * kPi)) < kAngleTol) {
        return {};
    }
    return {
        make_gate(GateKind::RY, {target}, {theta / 2}),
        make_gate(GateKind::CNOT, {control, target}),
        make_gate(GateKind::RY, {target}, {-theta / 2}),
        make_gate(GateKind::CNOT, {control, target}),
    };
}

namespace {

class Rewriter {
   public:
    Rewriter(std::size_t n, const BasisSet &basis) : out_(n), basis_(basis), pending_(n, 0.0), has_(n, false) {}

    void gate(const GateInstance &g) {
        if (g.kind == GateKind::RZ && basis_.contains(GateKind::RZ)) {
            const auto q = g.qubits[0];
            pending_[q] += g.params[0];
            has_[q] = true;
            return;
        }
        if (basis_.contains(g.kind)) {
            for (auto q : g.qubits) {
                flush(q);
            }
            out_.append(g);
            return;
        }
        if (g.kind == GateKind::CRY) {
            if (!basis_.contains(GateKind::CNOT)) {
                throw std::invalid_argument("transpile: cry needs cx in the basis");
            }
            for (const auto &sub : decompose_cry(g.params[0], g.qubits[0], g.qubits[1])) {
                gate(sub);
            }
            return;
        }
        if (gate_arity(g.kind) == 1) {
            if (!basis_.contains(GateKind::RZ) || !basis_.contains(GateKind::SX)) {
                throw std::invalid_argument("transpile: cannot express " + std::string(gate_name(g.kind)) +
                                            " without rz and sx in the basis");
            }
            for (const auto &sub : decompose_1q(gate_matrix(g), g.qubits[0])) {
                gate(sub);
            }
            return;
        }
        throw std::invalid_argument("transpile: gate " + std::string(gate_name(g.kind)) +
                                    " is not decomposable into basis " + basis_.to_string());
    }

    void fence() {
        flush_all();
        out_.barrier();
    }

    Circuit finish() {
        flush_all();
        return std::move(out_);
    }

   private:
    void flush(std::size_t q) {
        if (!has_[q]) {
            return;
        }
        has_[q] = false;
        const double a = normalize_angle(pending_[q]);
        pending_[q] = 0.0;
        if (std::abs(a) >= kAngleTol) {
            out_.append(GateKind::RZ, {q}, {a});
        }
    }

    void flush_all() {
        for (std::size_t q = 0; q < pending_.size(); q++) {
            flush(q);
        }
    }

    Circuit out_;
    const BasisSet &basis_;
    std::vector<double> pending_;
    std::vector<bool> has_;
};

}  // namespace

Circuit transpile(const Circuit &circuit, const BasisSet &basis) {
    basis.validate();
    Rewriter rw(circuit.n_qubits(), basis);
    for (const auto &op : circuit.ops()) {
        if (const auto *g = std::get_if<GateInstance>(&op)) {
            rw.gate(*g);
        } else {
            rw.fence();
        }
    }
    Circuit out = rw.finish();
    out.set_label(circuit.label());
    return out;
}

TranspileMetrics transpile_metrics(const Circuit &before, const Circuit &after) {
    return {depth(before), depth(after), gate_counts(before), gate_counts(after)};
}

nlohmann::ordered_json to_json(const TranspileMetrics &m) {
    nlohmann::ordered_json doc;
    doc["depth_before"] = m.depth_before;
    doc["depth_after"] = m.depth_after;
    doc["counts_before"] = m.counts_before;
    doc["counts_after"] = m.counts_after;
    return doc;
}

Circuit relabel_qubits(const Circuit &circuit, const std::vector<std::size_t> &mapping) {
    if (mapping.size() != circuit.n_qubits()) {
        throw std::invalid_argument("relabel_qubits: mapping size does not match the qubit count");
    }
    std::vector<bool> seen(mapping.size(), false);
    for (auto m : mapping) {
        if (m >= mapping.size() || seen[m]) {
            throw std::invalid_argument("relabel_qubits: mapping is not a permutation");
        }
        seen[m] = true;
    }
    Circuit out(circuit.n_qubits(), circuit.label());
    for (const auto &op : circuit.ops()) {
        if (const auto *g = std::get_if<GateInstance>(&op)) {
            GateInstance r = *g;
            for (auto &q : r.qubits) {
                q = mapping[q];
            }
            out.append(std::move(r));
        } else {
            out.barrier();
        }
    }
    return out;
}

}  // namespace oqs
