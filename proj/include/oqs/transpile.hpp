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

#ifndef OQS_TRANSPILE_HPP
#define OQS_TRANSPILE_HPP

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "oqs/circuit.hpp"
#include "oqs/numerics.hpp"

namespace oqs {

struct BasisSet {
    std::set<GateKind> kinds = {GateKind::CNOT, GateKind::I, GateKind::RZ, GateKind::SX};

    bool contains(GateKind k) const { return kinds.count(k) != 0; }
    /// Requires CNOT, SX and a parameterized rotation (RZ or RY).
    void validate() const;
    /// Comma-separated gate names, e.g. "cx,id,rz,sx".
    static BasisSet parse(const std::string &list);
    std::string to_string() const;
};

/// RZ/SX sequence equal to `u` up to global phase. Emits a single RZ for
/// diagonal input, three gates when the Y angle is pi/2, five otherwise, and
/// nothing for the identity.
std::vector<GateInstance> decompose_1q(const ComplexMatrix &u, std::size_t qubit);

/// RY(t/2) on target, CNOT, RY(-t/2) on target, CNOT. Empty when t = 0 mod 4 pi.
std::vector<GateInstance> decompose_cry(double theta, std::size_t control, std::size_t target);

/// Angle folded into (-pi, pi].
double normalize_angle(double a);

/// Rewrites every gate into `basis`, merging adjacent RZ gates on the same
/// qubit between barriers. Throws std::invalid_argument when a gate cannot be
/// expressed in the basis.
Circuit transpile(const Circuit &circuit, const BasisSet &basis = {});

struct TranspileMetrics {
    std::size_t depth_before = 0;
    std::size_t depth_after = 0;
    std::map<std::string, std::size_t> counts_before;
    std::map<std::string, std::size_t> counts_after;
};

TranspileMetrics transpile_metrics(const Circuit &before, const Circuit &after);
nlohmann::ordered_json to_json(const TranspileMetrics &m);

/// Qubit q becomes mapping[q].
Circuit relabel_qubits(const Circuit &circuit, const std::vector<std::size_t> &mapping);

}  // namespace oqs

#endif
