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

#ifndef OQS_CIRCUIT_HPP
#define OQS_CIRCUIT_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "oqs/numerics.hpp"

namespace oqs {

/// Supported gate kinds. SXDG only appears as the inverse of SX (folding).
enum class GateKind { I, X, SX, SXDG, H, RY, RZ, CNOT, CRY };

std::string_view gate_name(GateKind kind);
/// Inverse of gate_name; case-insensitive, accepts "cx" for CNOT.
GateKind parse_gate_kind(std::string_view name);
std::size_t gate_arity(GateKind kind);
std::size_t gate_param_count(GateKind kind);

struct GateInstance {
    GateKind kind = GateKind::I;
    std::vector<double> params;
    /// Control first for CNOT and CRY.
    std::vector<std::size_t> qubits;

    /// Throws std::invalid_argument on arity, parameter or repeated-qubit errors.
    void validate() const;
    /// Adjoint gate: same kind with negated angles, SX <-> SXDG.
    GateInstance inverse() const;

    bool operator==(const GateInstance &) const = default;
};

GateInstance make_gate(GateKind kind, std::vector<std::size_t> qubits, std::vector<double> params = {});

/// Full-width optimization fence. Has no unitary action.
struct Barrier {
    bool operator==(const Barrier &) const = default;
};

using Op = std::variant<GateInstance, Barrier>;

class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(std::size_t n_qubits, std::string label = {});

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    const std::string &label() const noexcept { return label_; }
    const std::vector<Op> &ops() const noexcept { return ops_; }
    std::size_t size() const noexcept { return ops_.size(); }

    void set_label(std::string label) { label_ = std::move(label); }

    Circuit &append(GateInstance gate);
    Circuit &append(GateKind kind, std::vector<std::size_t> qubits, std::vector<double> params = {});
    Circuit &barrier();
    /// Appends every op of `other`; widens this circuit if needed.
    Circuit &extend(const Circuit &other);

    /// Number of gate ops (barriers excluded).
    std::size_t gate_count() const;
    /// Reversed circuit of inverse gates; barriers are kept in mirrored positions.
    Circuit inverse() const;
    /// Same gates with every barrier removed.
    Circuit without_barriers() const;

    bool operator==(const Circuit &) const = default;

   private:
    std::size_t n_qubits_ = 0;
    std::string label_;
    std::vector<Op> ops_;
};

/// 2x2 or 4x4 unitary. RZ(t) = diag(e^{-it/2}, e^{it/2}); two-qubit gates are in
/// (control, target) order with the control as the most significant bit.
ComplexMatrix gate_matrix(const GateInstance &gate);

/// Full 2^n unitary, n <= 6. Qubit 0 is the most significant bit.
ComplexMatrix circuit_unitary(const Circuit &circuit);

/// ASAP layer count. Barriers align every qubit to the deepest layer so far.
std::size_t depth(const Circuit &circuit);
std::map<std::string, std::size_t> gate_counts(const Circuit &circuit);

/// JSON document `{n_qubits, label, ops: [{kind, params, qubits} | "barrier"]}`.
nlohmann::ordered_json to_json(const Circuit &circuit);
Circuit circuit_from_json(const nlohmann::ordered_json &doc);

}  // namespace oqs

#endif
