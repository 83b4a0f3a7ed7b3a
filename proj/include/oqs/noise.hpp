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

#ifndef OQS_NOISE_HPP
#define OQS_NOISE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oqs/circuit.hpp"
#include "oqs/numerics.hpp"

namespace oqs {

/// Kraus operators acting on `acting_qubits` (first listed = most significant).
struct KrausChannel {
    std::vector<ComplexMatrix> kraus_ops;
    std::vector<std::size_t> acting_qubits;

    /// max |sum K^H K - I|.
    double completeness_error() const;
};

/// Per-gate depolarizing noise. Depolarizing strength is p = 1 - fidelity.
struct NoiseModel {
    double fidelity_1q = 1.0;
    double fidelity_2q = 1.0;
    bool enabled = false;

    void validate() const;

    static NoiseModel disabled() { return {}; }
    /// 1q 0.9997, 2q 0.97.
    static NoiseModel fig6();
    /// 1q 0.9997, 2q 0.9914.
    static NoiseModel fig8();
};

/// rho -> (1-p) rho + p I/2^n realised as {sqrt(1-q) I} + {sqrt(q/(4^n-1)) P},
/// q = p (4^n-1)/4^n, P over non-identity Pauli strings. n is 1 or 2.
KrausChannel depolarizing_kraus(double p, std::size_t n_qubits);

/// Depolarizing channel for the gate's arity placed on the gate's qubits, or
/// nothing when the model is disabled.
std::optional<KrausChannel> channels_for(const NoiseModel &model, const GateInstance &gate);

nlohmann::ordered_json to_json(const NoiseModel &model);
NoiseModel noise_model_from_json(const nlohmann::ordered_json &doc);

}  // namespace oqs

#endif
