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

#include "oqs/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oqs/kernels.hpp"
#include "oqs/rng.hpp"

namespace oqs {

DensityMatrix::DensityMatrix(std::size_t n_qubits, ComplexMatrix mat) : n_qubits_(n_qubits), mat_(std::move(mat)) {
    const std::size_t dim = std::size_t{1} << n_qubits_;
    if (mat_.rows() != dim || mat_.cols() != dim) {
        throw std::invalid_argument(
            "DensityMatrix: expected " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix for " +
            std::to_string(n_qubits_) + " qubit(s)");
    }
}

double DensityMatrix::min_eigenvalue() const {
    ComplexMatrix h = (mat_ + mat_.adjoint()) * Complex(0.5);
    return eig_hermitian(h).front();
}

bool DensityMatrix::is_valid(double tol, double psd_tol) const {
    if (std::abs(mat_.trace() - Complex(1.0)) > tol || !is_hermitian(mat_, tol) || !mat_.all_finite()) {
        return false;
    }
    return min_eigenvalue() >= -psd_tol;
}

ComplexMatrix single_qubit_state(QubitInit init) {
    switch (init) {
        case QubitInit::Zero:
            return {{1, 0}, {0, 0}};
        case QubitInit::One:
            return {{0, 0}, {0, 1}};
        case QubitInit::Plus:
            return {{0.5, 0.5}, {0.5, 0.5}};
        case QubitInit::MixedZ:
            return {{0.5, 0}, {0, 0.5}};
    }
    throw std::invalid_argument("single_qubit_state: unknown preparation");
}

DensityMatrix init_state(std::span<const QubitInit> spec) {
    if (spec.empty()) {
        throw std::invalid_argument("init_state: need at least one qubit");
    }
    ComplexMatrix m = single_qubit_state(spec[0]);
    for (std::size_t q = 1; q < spec.size(); q++) {
        m = kron(m, single_qubit_state(spec[q]));
    }
    return DensityMatrix(spec.size(), std::move(m));
}

namespace {

constexpr double kCompletenessTol = 1e-8;

void check_channel(const KrausChannel &channel) {
    if (channel.completeness_error() > kCompletenessTol) {
        throw std::invalid_argument(
            "apply_channel: Kraus completeness violated by " + std::to_string(channel.completeness_error()));
    }
}

// Density matrix over the currently live subset of a circuit's qubits.
class Register {
   public:
    Register(std::size_t width, std::size_t max_live) : width_(width), max_live_(max_live), pos_(width, kAbsent) {
        rho_ = ComplexMatrix::identity(1);
    }

    Register(const DensityMatrix &init) : Register(init.n_qubits(), init.n_qubits()) {
        rho_ = init.mat();
        for (std::size_t q = 0; q < width_; q++) {
            pos_[q] = q;
            live_.push_back(q);
        }
    }

    bool is_live(std::size_t q) const { return pos_[q] != kAbsent; }

    void add(std::size_t q, const ComplexMatrix &state) {
        if (live_.size() + 1 > max_live_) {
            throw std::runtime_error(
                "simulator: more than " + std::to_string(max_live_) +
                " simultaneously live qubits; trace out environment qubits earlier");
        }
        rho_ = kron(rho_, state);
        pos_[q] = live_.size();
        live_.push_back(q);
    }

    void trace_out(std::size_t q) {
        const std::size_t p = pos_[q];
        const std::size_t traced[] = {p};
        rho_ = partial_trace(rho_, live_.size(), traced);
        live_.erase(live_.begin() + static_cast<std::ptrdiff_t>(p));
        pos_[q] = kAbsent;
        for (std::size_t k = p; k < live_.size(); k++) {
            pos_[live_[k]] = k;
        }
    }

    void apply_gate(const GateInstance &gate, const NoiseModel *noise) {
        std::vector<std::size_t> positions;
        for (auto q : gate.qubits) {
            positions.push_back(pos_[q]);
        }
        kernels::conjugate(rho_, gate_matrix(gate), positions, live_.size());
        if (noise != nullptr) {
            if (auto ch = channels_for(*noise, gate); ch && !is_identity_channel(*ch)) {
                kernels::apply_kraus(rho_, ch->kraus_ops, positions, live_.size());
            }
        }
    }

    void apply_channel(const KrausChannel &channel) {
        std::vector<std::size_t> positions;
        for (auto q : channel.acting_qubits) {
            if (q >= width_ || !is_live(q)) {
                throw std::invalid_argument("apply_channel: qubit " + std::to_string(q) + " not in register");
            }
            positions.push_back(pos_[q]);
        }
        kernels::apply_kraus(rho_, channel.kraus_ops, positions, live_.size());
    }

    DensityMatrix finish() const {
        std::vector<std::size_t> sorted = live_;
        std::sort(sorted.begin(), sorted.end());
        std::vector<std::size_t> order;
        for (auto q : sorted) {
            order.push_back(pos_[q]);
        }
        if (live_.empty()) {
            throw std::invalid_argument("simulator: every qubit was traced out");
        }
        return DensityMatrix(live_.size(), permute_qubits(rho_, order));
    }

   private:
    static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);

    static bool is_identity_channel(const KrausChannel &ch) {
        return ch.kraus_ops.size() == 1 &&
               max_abs_diff(ch.kraus_ops[0], ComplexMatrix::identity(ch.kraus_ops[0].rows())) == 0.0;
    }

    std::size_t width_;
    std::size_t max_live_;
    std::vector<std::size_t> pos_;
    std::vector<std::size_t> live_;
    ComplexMatrix rho_;
};

enum class QubitState { Pending, Live, Traced };

DensityMatrix evolve(
    const Circuit &circuit, Register reg, std::vector<QubitState> state, std::span<const QubitInit> init,
    const NoiseModel *noise, const TraceSchedule &schedule) {
    auto trace_list = [&](const std::vector<std::size_t> &qubits, std::size_t op_index) {
        for (auto q : qubits) {
            if (q >= circuit.n_qubits()) {
                throw std::out_of_range("trace schedule: qubit " + std::to_string(q) + " out of range");
            }
            if (state[q] == QubitState::Traced) {
                throw std::invalid_argument(
                    "trace schedule: qubit " + std::to_string(q) + " traced twice (op " + std::to_string(op_index) +
                    ")");
            }
            if (state[q] == QubitState::Live) {
                reg.trace_out(q);
            }
            state[q] = QubitState::Traced;
        }
    };

    const auto &ops = circuit.ops();
    for (std::size_t i = 0; i < ops.size(); i++) {
        if (const auto *g = std::get_if<GateInstance>(&ops[i])) {
            for (auto q : g->qubits) {
                if (state[q] == QubitState::Traced) {
                    throw std::logic_error(
                        "op " + std::to_string(i) + " (" + std::string(gate_name(g->kind)) + ") uses qubit " +
                        std::to_string(q) + " after it was traced out");
                }
                if (state[q] == QubitState::Pending) {
                    reg.add(q, single_qubit_state(init[q]));
                    state[q] = QubitState::Live;
                }
            }
            reg.apply_gate(*g, noise);
        }
        if (auto it = schedule.find(i); it != schedule.end()) {
            trace_list(it->second, i);
        }
    }
    for (auto it = schedule.lower_bound(ops.size()); it != schedule.end(); ++it) {
        trace_list(it->second, it->first);
    }
    for (std::size_t q = 0; q < circuit.n_qubits(); q++) {
        if (state[q] == QubitState::Pending) {
            reg.add(q, single_qubit_state(init[q]));
        }
    }
    return reg.finish();
}

}  // namespace

DensityMatrix apply_gate(DensityMatrix rho, const GateInstance &gate, const NoiseModel *noise) {
    gate.validate();
    for (auto q : gate.qubits) {
        if (q >= rho.n_qubits()) {
            throw std::invalid_argument("apply_gate: qubit " + std::to_string(q) + " outside state");
        }
    }
    kernels::conjugate(rho.mat(), gate_matrix(gate), gate.qubits, rho.n_qubits());
    if (noise != nullptr) {
        if (auto ch = channels_for(*noise, gate)) {
            kernels::apply_kraus(rho.mat(), ch->kraus_ops, ch->acting_qubits, rho.n_qubits());
        }
    }
    return rho;
}

DensityMatrix apply_channel(DensityMatrix rho, const KrausChannel &channel) {
    check_channel(channel);
    for (auto q : channel.acting_qubits) {
        if (q >= rho.n_qubits()) {
            throw std::invalid_argument("apply_channel: qubit " + std::to_string(q) + " outside state");
        }
    }
    kernels::apply_kraus(rho.mat(), channel.kraus_ops, channel.acting_qubits, rho.n_qubits());
    return rho;
}

TraceSchedule trace_after_last_use(const Circuit &circuit, std::span<const std::size_t> qubits) {
    const auto &ops = circuit.ops();
    std::vector<std::size_t> last(circuit.n_qubits(), ops.size());
    std::vector<bool> seen(circuit.n_qubits(), false);
    for (std::size_t i = 0; i < ops.size(); i++) {
        if (const auto *g = std::get_if<GateInstance>(&ops[i])) {
            for (auto q : g->qubits) {
                last[q] = i;
                seen[q] = true;
            }
        }
    }
    const std::size_t tail = ops.empty() ? 0 : ops.size() - 1;
    TraceSchedule schedule;
    for (auto q : qubits) {
        if (q >= circuit.n_qubits()) {
            throw std::out_of_range("trace_after_last_use: qubit " + std::to_string(q) + " out of range");
        }
        schedule[seen[q] ? last[q] : tail].push_back(q);
    }
    return schedule;
}

DensityMatrix run(
    const Circuit &circuit, const DensityMatrix &init, const NoiseModel *noise, const TraceSchedule &trace_out_after) {
    if (init.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument(
            "run: initial state has " + std::to_string(init.n_qubits()) + " qubit(s), circuit has " +
            std::to_string(circuit.n_qubits()));
    }
    if (noise != nullptr) {
        noise->validate();
    }
    std::vector<QubitState> state(circuit.n_qubits(), QubitState::Live);
    return evolve(circuit, Register(init), std::move(state), {}, noise, trace_out_after);
}

DensityMatrix run_streamed(
    const Circuit &circuit, std::span<const QubitInit> init, const NoiseModel *noise,
    const TraceSchedule &trace_out_after) {
    if (init.size() != circuit.n_qubits()) {
        throw std::invalid_argument("run_streamed: need one preparation per circuit qubit");
    }
    if (noise != nullptr) {
        noise->validate();
    }
    std::vector<QubitState> state(circuit.n_qubits(), QubitState::Pending);
    return evolve(circuit, Register(circuit.n_qubits(), kMaxLiveQubits), std::move(state), init, noise,
                  trace_out_after);
}

std::uint64_t Counts::get(const std::string &bits) const {
    auto it = histogram.find(bits);
    return it == histogram.end() ? 0 : it->second;
}

bool Counts::consistent() const {
    std::uint64_t total = 0;
    for (const auto &[k, v] : histogram) {
        total += v;
    }
    return total == shots;
}

std::string bitstring(std::size_t index, std::size_t n_bits) {
    std::string s(n_bits, '0');
    for (std::size_t k = 0; k < n_bits; k++) {
        if (index & (std::size_t{1} << (n_bits - 1 - k))) {
            s[k] = '1';
        }
    }
    return s;
}

std::vector<double> outcome_probabilities(const DensityMatrix &rho, std::span<const std::size_t> measured) {
    const std::size_t n = rho.n_qubits();
    std::vector<bool> keep(n, false);
    for (auto q : measured) {
        if (q >= n || keep[q]) {
            throw std::invalid_argument("outcome_probabilities: bad measured qubit list");
        }
        keep[q] = true;
    }
    std::vector<std::size_t> traced;
    std::vector<std::size_t> kept;
    for (std::size_t q = 0; q < n; q++) {
        (keep[q] ? kept : traced).push_back(q);
    }
    ComplexMatrix reduced = traced.empty() ? rho.mat() : partial_trace(rho.mat(), n, traced);
    std::vector<std::size_t> order;
    for (auto q : measured) {
        order.push_back(static_cast<std::size_t>(std::find(kept.begin(), kept.end(), q) - kept.begin()));
    }
    reduced = permute_qubits(reduced, order);
    std::vector<double> probs(reduced.rows());
    for (std::size_t k = 0; k < probs.size(); k++) {
        double p = reduced(k, k).real();
        if (p < -1e-9) {
            throw std::domain_error("outcome_probabilities: negative population " + std::to_string(p));
        }
        probs[k] = std::max(p, 0.0);
    }
    return probs;
}

Counts sample_from_probabilities(std::span<const double> probs, std::size_t n_bits, std::uint64_t shots,
                                 std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("sample: shots must be at least 1");
    }
    if (probs.size() != (std::size_t{1} << n_bits)) {
        throw std::invalid_argument("sample: probability vector length does not match bit count");
    }
    std::vector<double> cdf(probs.size());
    double total = 0;
    for (std::size_t k = 0; k < probs.size(); k++) {
        if (probs[k] < -1e-9 || !std::isfinite(probs[k])) {
            throw std::domain_error("sample: invalid probability " + std::to_string(probs[k]));
        }
        total += std::max(probs[k], 0.0);
        cdf[k] = total;
    }
    if (total <= 0) {
        throw std::domain_error("sample: probabilities sum to zero");
    }
    std::vector<std::uint64_t> tally(probs.size(), 0);
    Rng rng(seed);
    for (std::uint64_t s = 0; s < shots; s++) {
        const double u = rng.uniform() * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t k = static_cast<std::size_t>(it - cdf.begin());
        // u * total can round up to total.
        if (k == probs.size()) {
            k--;
            while (probs[k] <= 0) {
                k--;
            }
        }
        tally[k]++;
    }
    Counts counts;
    counts.shots = shots;
    for (std::size_t k = 0; k < tally.size(); k++) {
        if (tally[k] > 0) {
            counts.histogram[bitstring(k, n_bits)] = tally[k];
        }
    }
    return counts;
}

Counts sample_counts(const DensityMatrix &rho, std::span<const std::size_t> measured, std::uint64_t shots,
                     std::uint64_t seed) {
    const auto probs = outcome_probabilities(rho, measured);
    return sample_from_probabilities(probs, measured.size(), shots, seed);
}

std::vector<double> counts_to_distribution(const Counts &counts, std::size_t n_bits) {
    if (counts.shots == 0) {
        throw std::invalid_argument("counts_to_distribution: empty counts");
    }
    std::vector<double> dist(std::size_t{1} << n_bits, 0.0);
    for (const auto &[bits, n] : counts.histogram) {
        if (bits.size() != n_bits) {
            throw std::invalid_argument("counts_to_distribution: bitstring '" + bits + "' has wrong width");
        }
        std::size_t idx = 0;
        for (char ch : bits) {
            idx = (idx << 1) | (ch == '1' ? 1u : 0u);
        }
        dist[idx] += static_cast<double>(n) / static_cast<double>(counts.shots);
    }
    return dist;
}

}  // namespace oqs
