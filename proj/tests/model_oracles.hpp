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

// Choi-state comparison of a pump circuit against a Kraus map, shared by the
// unit and acceptance suites.

#ifndef OQS_MODEL_ORACLES_HPP
#define OQS_MODEL_ORACLES_HPP

#include <vector>

#include "oqs/kernels.hpp"
#include "oqs/models.hpp"
#include "oqs/simulator.hpp"

namespace oqs::testing {

/// Choi state of the reduced two-qubit channel realised by the pump body.
/// Output qubit order: q1, q2, r1, r2 where r_k is maximally entangled with q_k.
inline ComplexMatrix pump_circuit_choi(PumpKind kind, double p, std::size_t rounds = 1) {
    const ModelCircuit model = build_pump(kind, PumpParams{p, rounds, PumpInit::S00});
    const std::size_t n = model.body.n_qubits();
    const std::size_t r1 = n;
    const std::size_t r2 = n + 1;
    Circuit c(n + 2);
    c.append(GateKind::H, {r1});
    c.append(GateKind::CNOT, {r1, 1});
    c.append(GateKind::H, {r2});
    c.append(GateKind::CNOT, {r2, 2});
    c.extend(model.body);
    const std::vector<QubitInit> init(n + 2, QubitInit::Zero);
    return run_streamed(c, init, nullptr, trace_after_last_use(c, model.traced_qubits())).mat();
}

inline ComplexMatrix kraus_choi(const std::vector<ComplexMatrix> &kraus) {
    std::vector<Complex> omega(16, 0.0);
    for (std::size_t a = 0; a < 4; a++) {
        omega[a * 4 + a] = 0.5;
    }
    ComplexMatrix rho = ComplexMatrix::outer(omega);
    const std::size_t positions[] = {0, 1};
    kernels::apply_kraus(rho, kraus, positions, 4);
    return rho;
}

}  // namespace oqs::testing

#endif
