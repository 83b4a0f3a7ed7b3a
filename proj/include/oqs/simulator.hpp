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

#ifndef OQS_SIMULATOR_HPP
#define OQS_SIMULATOR_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "oqs/circuit.hpp"
#include "oqs/noise.hpp"
#include "oqs/numerics.hpp"

namespace oqs {

class DensityMatrix {
   public:
    DensityMatrix() = default;
    /// Throws std::invalid_argument unless `mat` is 2^n x 2^n.
    DensityMatrix(std::size_t n_qubits, ComplexMatrix mat);

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    std::size_t dim() const noexcept { return mat_.rows(); }
    const ComplexMatrix &mat() const noexcept { return mat_; }
    ComplexMatrix &mat() noexcept { return mat_; }

    double trace_real() const { return mat_.trace().real(); }
    double min_eigenvalue() const;
    /// Unit trace, Hermitian and PSD within the given tolerances.
    bool is_valid(double tol = 1e-10, double psd_tol = 1e-9) const;

   private:
    std::size_t n_qubits_ = 0;
    ComplexMatrix mat_;
};

/// Single-qubit preparation used to build product states.
enum class QubitInit { Zero, One, Plus, MixedZ };

ComplexMatrix single_qubit_state(QubitInit init);
DensityMatrix init_state(std::span<const QubitInit> spec);

/// U rho U^H on the gate's qubits, then the model's depolarizing channel.
DensityMatrix apply_gate(DensityMatrix rho, const GateInstance &gate, const NoiseModel *noise = nullptr);

/// sum_k K rho K^H; rejects channels whose completeness error exceeds 1e-8.
DensityMatrix apply_channel(DensityMatrix rho, const KrausChannel &channel);

/// Op index -> qubits traced out right after that op executes.
using TraceSchedule = std::map<std::size_t, std::vector<std::size_t>>;

/// Schedule that traces each of `qubits` right after the last op touching it.
/// Qubits no op touches are keyed at the final op. Keys at or beyond the op
/// count apply after the last op.
TraceSchedule trace_after_last_use(const Circuit &circuit, std::span<const std::size_t> qubits);

/// Hard cap on simultaneously live qubits (2^10 x 2^10 matrix).
inline constexpr std::size_t kMaxLiveQubits = 10;

/// Monolithic evolution from a full initial state. Scheduled qubits are traced
/// out after their op; the result covers the remaining qubits in ascending order.
DensityMatrix run(
    const Circuit &circuit, const DensityMatrix &init, const NoiseModel *noise = nullptr,
    const TraceSchedule &trace_out_after = {});

/// Streamed evolution: each qubit joins the register, prepared per `init`, when
/// an op first touches it and leaves when the schedule traces it out, so only
/// the live qubits are ever stored. Untouched qubits that are not traced are
/// added at the end. Result covers non-traced qubits in ascending order.
DensityMatrix run_streamed(
    const Circuit &circuit, std::span<const QubitInit> init, const NoiseModel *noise = nullptr,
    const TraceSchedule &trace_out_after = {});

/// Bitstring (qubit 0 leftmost) -> count.
struct Counts {
    std::map<std::string, std::uint64_t> histogram;
    std::uint64_t shots = 0;

    std::uint64_t get(const std::string &bits) const;
    bool consistent() const;
};

/// Exact outcome probabilities of measuring `measured` (first = leftmost bit),
/// indexed by the bitstring read as a binary number.
std::vector<double> outcome_probabilities(const DensityMatrix &rho, std::span<const std::size_t> measured);

/// Multinomial draw of `shots` outcomes by inverse CDF; deterministic per seed.
Counts sample_from_probabilities(std::span<const double> probs, std::size_t n_bits, std::uint64_t shots,
                                 std::uint64_t seed);

Counts sample_counts(const DensityMatrix &rho, std::span<const std::size_t> measured, std::uint64_t shots,
                     std::uint64_t seed);

std::string bitstring(std::size_t index, std::size_t n_bits);
/// Empirical distribution of `counts` over 2^n_bits outcomes.
std::vector<double> counts_to_distribution(const Counts &counts, std::size_t n_bits);

}  // namespace oqs

#endif
