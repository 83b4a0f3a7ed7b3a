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

#include "oqs/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <set>
#include <stdexcept>

#include "oqs/rng.hpp"

namespace oqs {

std::string folding_name(Folding f) {
    return f == Folding::Global ? "global" : "random-gates";
}

Folding parse_folding(const std::string &name) {
    if (name == "global") {
        return Folding::Global;
    }
    if (name == "random-gates" || name == "random") {
        return Folding::RandomGates;
    }
    throw std::invalid_argument("unknown folding '" + name + "' (expected global or random-gates)");
}

std::string extrapolator_name(Extrapolator e) {
    switch (e) {
        case Extrapolator::Linear:
            return "linear";
        case Extrapolator::Quadratic:
            return "quadratic";
        case Extrapolator::Richardson:
            return "richardson";
    }
    return "?";
}

Extrapolator parse_extrapolator(const std::string &name) {
    for (auto e : kAllExtrapolators) {
        if (extrapolator_name(e) == name) {
            return e;
        }
    }
    throw std::invalid_argument("unknown extrapolator '" + name + "'");
}

static bool is_odd_integer(double s) {
    return std::floor(s) == s && std::fmod(s, 2.0) == 1.0;
}

void ZneConfig::validate() const {
    if (scale_factors.empty() || scale_factors.front() != 1.0) {
        throw std::invalid_argument("ZNE scale factors must start at 1");
    }
    for (std::size_t k = 1; k < scale_factors.size(); k++) {
        if (!(scale_factors[k] > scale_factors[k - 1])) {
            throw std::invalid_argument("ZNE scale factors must be strictly increasing");
        }
    }
    if (!allow_any_count && (scale_factors.size() < 4 || scale_factors.size() > 8)) {
        throw std::invalid_argument(
            "ZNE needs between 4 and 8 scale factors, got " + std::to_string(scale_factors.size()));
    }
    if (folding == Folding::Global) {
        for (double s : scale_factors) {
            if (!is_odd_integer(s)) {
                throw std::invalid_argument("global folding needs odd integer scale factors");
            }
        }
    }
    const std::size_t need = extrapolator == Extrapolator::Quadratic ? 3 : 2;
    if (scale_factors.size() < need) {
        throw std::invalid_argument(extrapolator_name(extrapolator) + " extrapolation needs more scale factors");
    }
}

std::vector<double> ZneConfig::odd_scale_factors(std::size_t count) {
    std::vector<double> out;
    for (std::size_t k = 0; k < count; k++) {
        out.push_back(static_cast<double>(2 * k + 1));
    }
    return out;
}

Circuit fold_global(const Circuit &circuit, int scale) {
    if (scale < 1 || scale % 2 == 0) {
        throw std::invalid_argument("fold_global: scale must be an odd integer >= 1, got " + std::to_string(scale));
    }
    const Circuit inv = circuit.inverse();
    Circuit out = circuit;
    for (int k = 0; k < (scale - 1) / 2; k++) {
        out.extend(inv);
        out.extend(circuit);
    }
    return out;
}

Circuit fold_gates_random(const Circuit &circuit, double scale, std::uint64_t seed) {
    if (!(scale >= 1.0)) {
        throw std::invalid_argument("fold_gates_random: scale must be >= 1");
    }
    std::vector<std::size_t> gate_ops;
    for (std::size_t i = 0; i < circuit.ops().size(); i++) {
        if (std::holds_alternative<GateInstance>(circuit.ops()[i])) {
            gate_ops.push_back(i);
        }
    }
    const std::size_t n = gate_ops.size();
    if (n == 0) {
        return circuit;
    }
    const auto folds = static_cast<std::size_t>(std::llround(static_cast<double>(n) * (scale - 1) / 2));
    const std::size_t everywhere = folds / n;
    const std::size_t extra = folds % n;

    // Partial Fisher-Yates: the first `extra` entries are a uniform subset.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    for (std::size_t k = 0; k < extra; k++) {
        const std::size_t j = k + static_cast<std::size_t>(rng.below(n - k));
        std::swap(order[k], order[j]);
    }
    std::vector<std::size_t> times(n, everywhere);
    for (std::size_t k = 0; k < extra; k++) {
        times[order[k]]++;
    }

    Circuit out(circuit.n_qubits(), circuit.label());
    std::size_t g = 0;
    for (const auto &op : circuit.ops()) {
        const auto *gate = std::get_if<GateInstance>(&op);
        if (gate == nullptr) {
            out.barrier();
            continue;
        }
        out.append(*gate);
        const GateInstance inv = gate->inverse();
        for (std::size_t k = 0; k < times[g]; k++) {
            out.append(inv);
            out.append(*gate);
        }
        g++;
    }
    return out;
}

double extrapolate(std::span<const std::pair<double, double>> points, Extrapolator method) {
    std::set<double> xs;
    for (const auto &[x, y] : points) {
        if (!xs.insert(x).second) {
            throw std::invalid_argument("extrapolate: duplicate scale factor " + std::to_string(x));
        }
    }
    const std::size_t need = method == Extrapolator::Quadratic ? 3 : 2;
    if (points.size() < need) {
        throw std::invalid_argument(
            extrapolator_name(method) + " extrapolation needs at least " + std::to_string(need) + " points");
    }
    switch (method) {
        case Extrapolator::Linear:
            return polyfit_lsq(points, 1)[0];
        case Extrapolator::Quadratic:
            return polyfit_lsq(points, 2)[0];
        case Extrapolator::Richardson: {
            double acc = 0;
            for (std::size_t i = 0; i < points.size(); i++) {
                double w = 1;
                for (std::size_t j = 0; j < points.size(); j++) {
                    if (j != i) {
                        w *= points[j].first / (points[j].first - points[i].first);
                    }
                }
                acc += w * points[i].second;
            }
            return acc;
        }
    }
    throw std::invalid_argument("extrapolate: unknown method");
}

std::uint64_t scale_seed(const ZneConfig &config, std::size_t k) {
    return derive_seed(config.seed, {k});
}

Circuit fold_for_scale(const Circuit &circuit, const ZneConfig &config, std::size_t k) {
    const double scale = config.scale_factors.at(k);
    if (config.folding == Folding::Global) {
        return fold_global(circuit, static_cast<int>(scale));
    }
    return fold_gates_random(circuit, scale, scale_seed(config, k));
}

ZneMultiResult zne_execute_multi(const Circuit &circuit, const MultiExecutor &executor, const ZneConfig &config) {
    config.validate();
    const std::size_t m = config.scale_factors.size();
    ZneMultiResult result;
    result.scales = config.scale_factors;
    result.raw.resize(m);
    std::vector<std::exception_ptr> errors(m);

#pragma omp parallel for schedule(dynamic)
    for (long long k = 0; k < static_cast<long long>(m); k++) {
        const auto ku = static_cast<std::size_t>(k);
        try {
            result.raw[ku] = executor(fold_for_scale(circuit, config, ku), scale_seed(config, ku));
        } catch (...) {
            errors[ku] = std::current_exception();
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    const std::size_t width = result.raw.front().size();
    for (const auto &r : result.raw) {
        if (r.size() != width) {
            throw std::runtime_error("zne_execute: executor returned inconsistent result sizes");
        }
    }
    result.mitigated.resize(width);
    std::vector<std::pair<double, double>> pts(m);
    for (std::size_t c = 0; c < width; c++) {
        for (std::size_t k = 0; k < m; k++) {
            pts[k] = {result.scales[k], result.raw[k][c]};
        }
        result.mitigated[c] = extrapolate(pts, config.extrapolator);
    }
    return result;
}

ZneResult zne_execute(const Circuit &circuit, const Executor &executor, const ZneConfig &config) {
    auto multi = zne_execute_multi(
        circuit,
        [&](const Circuit &c, std::uint64_t seed) {
            return std::vector<double>{executor(c, seed)};
        },
        config);
    ZneResult out;
    out.mitigated = multi.mitigated[0];
    for (std::size_t k = 0; k < multi.scales.size(); k++) {
        out.raw_points.push_back({multi.scales[k], multi.raw[k][0]});
    }
    return out;
}

ConfusionMatrix::ConfusionMatrix(std::vector<Qubit> per_qubit) : per_qubit_(std::move(per_qubit)) {
    for (const auto &a : per_qubit_) {
        for (std::size_t j = 0; j < 2; j++) {
            const double col = a[0][j] + a[1][j];
            if (std::abs(col - 1.0) > 1e-12) {
                throw std::invalid_argument("confusion matrix columns must sum to 1");
            }
            for (std::size_t i = 0; i < 2; i++) {
                if (!(a[i][j] >= 0.0 && a[i][j] <= 1.0)) {
                    throw std::invalid_argument("confusion matrix entries must lie in [0, 1]");
                }
            }
        }
    }
}

ConfusionMatrix ConfusionMatrix::uniform(std::size_t n_qubits, double p01, double p10) {
    Qubit a = {{{1 - p01, p10}, {p01, 1 - p10}}};
    return ConfusionMatrix(std::vector<Qubit>(n_qubits, a));
}

ComplexMatrix ConfusionMatrix::composite() const {
    ComplexMatrix m = ComplexMatrix::identity(1);
    for (const auto &a : per_qubit_) {
        m = kron(m, ComplexMatrix{{a[0][0], a[0][1]}, {a[1][0], a[1][1]}});
    }
    return m;
}

std::vector<double> ConfusionMatrix::apply(std::span<const double> dist) const {
    const ComplexMatrix m = composite();
    if (dist.size() != m.cols()) {
        throw std::invalid_argument("confusion matrix: distribution length does not match qubit count");
    }
    std::vector<double> out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); i++) {
        for (std::size_t j = 0; j < m.cols(); j++) {
            out[i] += m(i, j).real() * dist[j];
        }
    }
    return out;
}

std::vector<double> project_to_simplex(std::span<const double> v) {
    if (v.empty()) {
        throw std::invalid_argument("project_to_simplex: empty vector");
    }
    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0;
    double tau = 0;
    for (std::size_t j = 0; j < u.size(); j++) {
        cumulative += u[j];
        const double t = (cumulative - 1) / static_cast<double>(j + 1);
        if (u[j] - t > 0) {
            tau = t;
        }
    }
    std::vector<double> out(v.size());
    for (std::size_t k = 0; k < v.size(); k++) {
        out[k] = std::max(v[k] - tau, 0.0);
    }
    return out;
}

static Counts distribute_shots(std::span<const double> dist, std::uint64_t shots, std::size_t n_bits) {
    Counts c;
    c.shots = shots;
    std::vector<std::uint64_t> whole(dist.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::uint64_t assigned = 0;
    for (std::size_t k = 0; k < dist.size(); k++) {
        const double exact = dist[k] * static_cast<double>(shots);
        whole[k] = static_cast<std::uint64_t>(std::floor(exact));
        assigned += whole[k];
        remainders.emplace_back(exact - std::floor(exact), k);
    }
    // Largest remainder first; ties broken by outcome index.
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto &a, const auto &b) { return a.first > b.first; });
    for (std::size_t k = 0; assigned < shots && k < remainders.size(); k++, assigned++) {
        whole[remainders[k].second]++;
    }
    for (std::size_t k = 0; k < dist.size(); k++) {
        if (whole[k] > 0) {
            c.histogram[bitstring(k, n_bits)] = whole[k];
        }
    }
    return c;
}

RemResult rem_apply(std::span<const double> dist, const ConfusionMatrix &a) {
    const ComplexMatrix m = a.composite();
    if (dist.size() != m.rows()) {
        throw std::invalid_argument(
            "rem_apply: distribution over " + std::to_string(dist.size()) + " outcomes does not match a " +
            std::to_string(a.n_qubits()) + "-qubit confusion matrix");
    }
    const ComplexMatrix inv = pseudo_inverse(m);
    RemResult r;
    r.empirical.assign(dist.begin(), dist.end());
    r.quasi.assign(dist.size(), 0.0);
    for (std::size_t i = 0; i < dist.size(); i++) {
        for (std::size_t j = 0; j < dist.size(); j++) {
            r.quasi[i] += inv(i, j).real() * dist[j];
        }
    }
    r.projected = project_to_simplex(r.quasi);
    return r;
}

RemResult rem_apply(const Counts &counts, const ConfusionMatrix &a) {
    const auto dist = counts_to_distribution(counts, a.n_qubits());
    RemResult r = rem_apply(dist, a);
    r.projected_counts = distribute_shots(r.projected, counts.shots, a.n_qubits());
    return r;
}

Counts apply_readout_noise(const Counts &counts, const ConfusionMatrix &a, std::uint64_t seed) {
    const std::size_t n = a.n_qubits();
    Rng rng(seed);
    std::vector<std::uint64_t> tally(std::size_t{1} << n, 0);
    for (const auto &[bits, count] : counts.histogram) {
        if (bits.size() != n) {
            throw std::invalid_argument("apply_readout_noise: bitstring '" + bits + "' has wrong width");
        }
        for (std::uint64_t s = 0; s < count; s++) {
            std::size_t idx = 0;
            for (std::size_t q = 0; q < n; q++) {
                const std::size_t truth = bits[q] == '1' ? 1 : 0;
                const double flip = a.per_qubit()[q][1 - truth][truth];
                std::size_t read = truth;
                if (flip > 0 && rng.uniform() < flip) {
                    read = 1 - truth;
                }
                idx = (idx << 1) | read;
            }
            tally[idx]++;
        }
    }
    Counts out;
    out.shots = counts.shots;
    for (std::size_t k = 0; k < tally.size(); k++) {
        if (tally[k] > 0) {
            out.histogram[bitstring(k, n)] = tally[k];
        }
    }
    return out;
}

Counts apply_readout_noise(std::span<const double> dist, std::uint64_t shots, const ConfusionMatrix &a,
                           std::uint64_t seed) {
    const Counts clean = sample_from_probabilities(dist, a.n_qubits(), shots, derive_seed(seed, {0}));
    return apply_readout_noise(clean, a, derive_seed(seed, {1}));
}

nlohmann::ordered_json to_json(const ZneConfig &config) {
    nlohmann::ordered_json doc;
    doc["scale_factors"] = config.scale_factors;
    doc["folding"] = folding_name(config.folding);
    doc["extrapolator"] = extrapolator_name(config.extrapolator);
    doc["seed"] = config.seed;
    doc["fold_readout"] = config.fold_readout;
    return doc;
}

ZneConfig zne_config_from_json(const nlohmann::ordered_json &doc) {
    ZneConfig c;
    if (doc.contains("scale_factors")) {
        const auto &sf = doc.at("scale_factors");
        if (sf.is_number_integer()) {
            c.scale_factors = ZneConfig::odd_scale_factors(sf.get<std::size_t>());
        } else {
            c.scale_factors = sf.get<std::vector<double>>();
        }
    }
    c.folding = parse_folding(doc.value("folding", std::string("global")));
    c.extrapolator = parse_extrapolator(doc.value("extrapolator", std::string("linear")));
    c.seed = doc.value("seed", std::uint64_t{0});
    c.fold_readout = doc.value("fold_readout", true);
    c.validate();
    return c;
}

}  // namespace oqs
