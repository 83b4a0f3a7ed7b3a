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

// Circuit builders and closed-form references for two open-system models:
//
//  * Bell-state pumps. The ZZ pump moves population from the +1 to the -1
//    eigenspace of Z(x)Z with strength p; the XX pump does the same for X(x)X.
//    Composed, they drive every two-qubit state towards |psi->.
//  * Collision model. A system qubit collides n times with environment qubits
//    through U = e^{i g tau Z} (x) |0><0| + e^{-i g tau Z} (x) |1><1|. With one
//    classically correlated environment the coherence evolves as
//    cos(2 n g tau) / 2; with fresh |+> environments it decays as
//    cos^n(2 g tau) / 2.

#ifndef OQS_MODELS_HPP
#define OQS_MODELS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "oqs/circuit.hpp"
#include "oqs/noise.hpp"
#include "oqs/simulator.hpp"

namespace oqs {

enum class PumpKind { ZZ, XX, ZZXX };

std::string pump_name(PumpKind kind);
PumpKind parse_pump_kind(const std::string &name);

/// Two-qubit starting point of a pump experiment.
enum class PumpInit { S00, S01, S10, S11, PhiPlus, PhiMinus, PsiPlus, PsiMinus };

PumpInit parse_pump_init(const std::string &label);
std::string pump_init_label(PumpInit init);
/// Pure two-qubit state vector for `init` (first qubit most significant).
std::array<Complex, 4> pump_init_vector(PumpInit init);

struct PumpParams {
    double p = 0.0;
    std::size_t rounds = 1;
    PumpInit init = PumpInit::S00;

    void validate() const;
};

struct CollisionParams {
    double g_tau = 0.15;
    std::size_t n_collisions = 0;
    bool correlated = true;
};

/// Overlap with each Bell state, in the order phi+, phi-, psi+, psi-.
struct BellOverlaps {
    std::array<double, 4> values{};

    double phi_plus() const { return values[0]; }
    double phi_minus() const { return values[1]; }
    double psi_plus() const { return values[2]; }
    double psi_minus() const { return values[3]; }
    double sum() const { return values[0] + values[1] + values[2] + values[3]; }
};

inline constexpr std::array<const char *, 4> kBellLabels = {"phi_plus", "phi_minus", "psi_plus", "psi_minus"};

struct CoherenceEstimate {
    double rho12 = 0.0;
    std::size_t time_index = 0;
};

/// A model circuit split into the evolution body and the measurement-basis
/// rotation, plus everything needed to run it.
struct ModelCircuit {
    Circuit body;
    Circuit readout;
    std::vector<QubitInit> init;
    /// Qubits kept after the run, ascending. The rest are traced out.
    std::vector<std::size_t> system_qubits;
    /// Qubits read out, in bitstring order.
    std::vector<std::size_t> measured;

    /// body followed by readout.
    Circuit full() const;
    std::vector<std::size_t> traced_qubits() const;
};

/// RY angle that flips with probability p: arccos(1 - 2p).
double pump_angle(double p);

/// System qubits are q1, q2. The ZZ and XX pumps use one environment ancilla
/// per round (q0 first, then q3, q4, ...); the ZZ-XX pump uses two per round
/// (q0 and q3 first, then q4/q5, ...). Ancillas start in |1> via X.
ModelCircuit build_pump(PumpKind kind, const PumpParams &params);
ModelCircuit build_zz_pump(const PumpParams &params);
ModelCircuit build_xx_pump(const PumpParams &params);
ModelCircuit build_zzxx_pump(const PumpParams &params);

/// Kraus operators E1, E2 of one pump on two system qubits.
std::array<ComplexMatrix, 2> pump_kraus(PumpKind kind, double p);

/// Composite Kraus set of one round (ZZ-XX gives the 4 products E_x E_z).
std::vector<ComplexMatrix> pump_round_kraus(PumpKind kind, double p);

/// Appended to a two-qubit register: CNOT (q_b controls q_a) then H on q_b.
/// Outcome "00" <-> phi+, "01" <-> phi-, "10" <-> psi+, "11" <-> psi-.
Circuit bell_readout(std::size_t n_qubits, std::size_t qa, std::size_t qb);

BellOverlaps bell_overlaps_exact(const DensityMatrix &rho);
/// Overlaps from the four computational outcomes after bell_readout.
BellOverlaps bell_overlaps_from_distribution(const std::vector<double> &dist);
BellOverlaps bell_overlaps_from_counts(const Counts &counts);
BellOverlaps bell_overlaps_measured(const DensityMatrix &rho, std::uint64_t shots, std::uint64_t seed);

/// System q0 prepared |+> by H; correlated: one environment q1 in the
/// maximally mixed Z state shared by every collision; uncorrelated: environment
/// q_k prepared |+> by H just before collision k. A collision is
/// CNOT(env -> sys), RZ(-2 g tau) on sys, CNOT(env -> sys), followed by a
/// barrier. The readout is H on the system.
ModelCircuit build_collisional(const CollisionParams &params);
/// As build_collisional, with the sign of the RZ angle chosen by the caller.
ModelCircuit build_collisional(const CollisionParams &params, double rz_sign);

/// rho12 = (N0 - N1) / (2 shots) for a single measured qubit.
CoherenceEstimate coherence_from_counts(const Counts &counts, std::size_t time_index = 0);
/// Same estimator on exact outcome probabilities.
double coherence_from_distribution(const std::vector<double> &dist);

double analytic_correlated(std::size_t n, double g_tau);
double analytic_uncorrelated(std::size_t n, double g_tau);
/// `rounds` exact applications of the pump's Kraus map to the initial state.
BellOverlaps analytic_pump_overlaps(PumpKind kind, const PumpParams &params);
DensityMatrix analytic_pump_state(PumpKind kind, const PumpParams &params);

/// Noiseless or noisy run of a model body, returning the reduced system state.
DensityMatrix run_model(const ModelCircuit &model, const NoiseModel *noise = nullptr);

}  // namespace oqs

#endif
