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

#ifndef OQS_MITIGATION_HPP
#define OQS_MITIGATION_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "oqs/circuit.hpp"
#include "oqs/numerics.hpp"
#include "oqs/simulator.hpp"

namespace oqs {

// ---------------------------------------------------------------------------
// Zero-noise extrapolation

enum class Folding { Global, RandomGates };
enum class Extrapolator { Linear, Quadratic, Richardson };

std::string folding_name(Folding f);
Folding parse_folding(const std::string &name);
std::string extrapolator_name(Extrapolator e);
Extrapolator parse_extrapolator(const std::string &name);
inline constexpr std::array<Extrapolator, 3> kAllExtrapolators = {
    Extrapolator::Linear, Extrapolator::Quadratic, Extrapolator::Richardson};

struct ZneConfig {
    std::vector<double> scale_factors = {1, 3, 5, 7};
    Folding folding = Folding::Global;
    Extrapolator extrapolator = Extrapolator::Linear;
    std::uint64_t seed = 0;
    /// Fold the measurement-basis rotation together with the body.
    bool fold_readout = true;
    /// Lift the 4..8 scale-factor count rule.
    bool allow_any_count = false;

    void validate() const;
    /// [1, 3, ..., 2k-1].
    static std::vector<double> odd_scale_factors(std::size_t count);
};

/// C -> C (C^H C)^((scale-1)/2). Scale must be an odd integer >= 1.
Circuit fold_global(const Circuit &circuit, int scale);

/// Folds G -> G G^H G on a seeded random subset of gates so the gate count is
/// as close as possible to scale * original. Whole multiples fold every gate.
Circuit fold_gates_random(const Circuit &circuit, double scale, std::uint64_t seed);

/// Zero-noise estimate from (scale, value) points.
double extrapolate(std::span<const std::pair<double, double>> points, Extrapolator method);

struct ZnePoint {
    double scale = 1.0;
    double value = 0.0;
};

struct ZneResult {
    double mitigated = 0.0;
    std::vector<ZnePoint> raw_points;
};

/// Per-scale executor; receives the folded circuit and a seed derived from
/// the config seed and the scale index.
using Executor = std::function<double(const Circuit &, std::uint64_t seed)>;
using MultiExecutor = std::function<std::vector<double>(const Circuit &, std::uint64_t seed)>;

/// Folded circuit for scale index `k` of `config`.
Circuit fold_for_scale(const Circuit &circuit, const ZneConfig &config, std::size_t k);
std::uint64_t scale_seed(const ZneConfig &config, std::size_t k);

ZneResult zne_execute(const Circuit &circuit, const Executor &executor, const ZneConfig &config);

/// Vector-valued variant: raw[k] holds the executor output at scale k.
struct ZneMultiResult {
    std::vector<double> scales;
    std::vector<std::vector<double>> raw;
    std::vector<double> mitigated;
};
ZneMultiResult zne_execute_multi(const Circuit &circuit, const MultiExecutor &executor, const ZneConfig &config);

// ---------------------------------------------------------------------------
// Readout-error mitigation

/// Per-qubit 2x2 column-stochastic matrices, A[i][j] = P(read i | true j).
class ConfusionMatrix {
   public:
    using Qubit = std::array<std::array<double, 2>, 2>;

    ConfusionMatrix() = default;
    explicit ConfusionMatrix(std::vector<Qubit> per_qubit);
    /// Same flip rates on every qubit: p01 = P(read 1 | true 0), p10 = P(read 0 | true 1).
    static ConfusionMatrix uniform(std::size_t n_qubits, double p01, double p10);

    std::size_t n_qubits() const noexcept { return per_qubit_.size(); }
    const std::vector<Qubit> &per_qubit() const noexcept { return per_qubit_; }
    /// Tensor product with qubit 0 most significant.
    ComplexMatrix composite() const;
    /// A p for a distribution p over 2^n outcomes.
    std::vector<double> apply(std::span<const double> dist) const;

   private:
    std::vector<Qubit> per_qubit_;
};

struct RemResult {
    std::vector<double> empirical;
    /// pinv(A) p_hat; may have negative entries.
    std::vector<double> quasi;
    /// Euclidean projection of `quasi` onto the probability simplex.
    std::vector<double> projected;
    /// `projected` scaled to the original shot total (largest remainder).
    Counts projected_counts;
};

RemResult rem_apply(const Counts &counts, const ConfusionMatrix &a);
/// Distribution-level variant used in exact mode.
RemResult rem_apply(std::span<const double> dist, const ConfusionMatrix &a);

/// Sort-based Euclidean projection onto {x >= 0, sum x = 1}.
std::vector<double> project_to_simplex(std::span<const double> v);

/// Independent per-shot bit flips.
Counts apply_readout_noise(const Counts &counts, const ConfusionMatrix &a, std::uint64_t seed);
/// Samples `shots` outcomes from `dist` and flips their bits.
Counts apply_readout_noise(std::span<const double> dist, std::uint64_t shots, const ConfusionMatrix &a,
                           std::uint64_t seed);

nlohmann::ordered_json to_json(const ZneConfig &config);
ZneConfig zne_config_from_json(const nlohmann::ordered_json &doc);

}  // namespace oqs

#endif
