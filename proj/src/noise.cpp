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

#include "oqs/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace oqs {

double KrausChannel::completeness_error() const {
    if (kraus_ops.empty()) {
        return INFINITY;
    }
    ComplexMatrix sum(kraus_ops[0].cols(), kraus_ops[0].cols());
    for (const auto &k : kraus_ops) {
        sum += k.adjoint() * k;
    }
    return max_abs_diff(sum, ComplexMatrix::identity(sum.rows()));
}

void NoiseModel::validate() const {
    auto check = [](double f, const char *name) {
        if (!(f >= 0.0 && f <= 1.0)) {
            throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(f));
        }
    };
    check(fidelity_1q, "fidelity_1q");
    check(fidelity_2q, "fidelity_2q");
}

NoiseModel NoiseModel::fig6() {
    return {0.9997, 0.97, true};
}

NoiseModel NoiseModel::fig8() {
    return {0.9997, 0.9914, true};
}

KrausChannel depolarizing_kraus(double p, std::size_t n_qubits) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("depolarizing_kraus: p must lie in [0, 1], got " + std::to_string(p));
    }
    if (n_qubits != 1 && n_qubits != 2) {
        throw std::invalid_argument("depolarizing_kraus: only 1- and 2-qubit channels are supported");
    }
    KrausChannel ch;
    for (std::size_t q = 0; q < n_qubits; q++) {
        ch.acting_qubits.push_back(q);
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (p == 0.0) {
        ch.kraus_ops.push_back(ComplexMatrix::identity(dim));
        return ch;
    }
    const double paulis = std::pow(4.0, static_cast<double>(n_qubits));
    const double q = p * (paulis - 1) / paulis;
    const std::vector<ComplexMatrix> single = {pauli::I(), pauli::X(), pauli::Y(), pauli::Z()};

    ch.kraus_ops.push_back(ComplexMatrix::identity(dim) * Complex(std::sqrt(1 - q)));
    const Complex weight(std::sqrt(q / (paulis - 1)));
    if (n_qubits == 1) {
        for (std::size_t a = 1; a < 4; a++) {
            ch.kraus_ops.push_back(single[a] * weight);
        }
    } else {
        for (std::size_t a = 0; a < 4; a++) {
            for (std::size_t b = 0; b < 4; b++) {
                if (a == 0 && b == 0) {
                    continue;
                }
                ch.kraus_ops.push_back(kron(single[a], single[b]) * weight);
            }
        }
    }
    return ch;
}

std::optional<KrausChannel> channels_for(const NoiseModel &model, const GateInstance &gate) {
    if (!model.enabled) {
        return std::nullopt;
    }
    const std::size_t arity = gate_arity(gate.kind);
    const double p = 1.0 - (arity == 1 ? model.fidelity_1q : model.fidelity_2q);
    KrausChannel ch = depolarizing_kraus(p, arity);
    ch.acting_qubits = gate.qubits;
    return ch;
}

nlohmann::ordered_json to_json(const NoiseModel &model) {
    nlohmann::ordered_json doc;
    doc["enabled"] = model.enabled;
    doc["fidelity_1q"] = model.fidelity_1q;
    doc["fidelity_2q"] = model.fidelity_2q;
    return doc;
}

NoiseModel noise_model_from_json(const nlohmann::ordered_json &doc) {
    NoiseModel m;
    m.enabled = doc.value("enabled", true);
    m.fidelity_1q = doc.value("fidelity_1q", 1.0);
    m.fidelity_2q = doc.value("fidelity_2q", 1.0);
    m.validate();
    return m;
}

}  // namespace oqs
