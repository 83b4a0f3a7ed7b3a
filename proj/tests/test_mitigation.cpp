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

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oqs/mitigation.hpp"
#include "oqs/models.hpp"

namespace oqs {
namespace {

Circuit sample_circuit() {
    Circuit c(3, "sample");
    c.append(GateKind::H, {0});
    c.append(GateKind::CRY, {0, 1}, {0.9});
    c.barrier();
    c.append(GateKind::SX, {2});
    c.append(GateKind::CNOT, {1, 2});
    c.append(GateKind::RZ, {2}, {-0.4});
    c.append(GateKind::RY, {0}, {1.7});
    return c;
}

TEST(FoldGlobal, ScalesGateCountAndKeepsUnitary) {
    const auto c = sample_circuit();
    const auto u = circuit_unitary(c);
    for (int s : {1, 3, 5, 7}) {
        const auto f = fold_global(c, s);
        EXPECT_EQ(f.gate_count(), static_cast<std::size_t>(s) * c.gate_count());
        EXPECT_TRUE(equal_up_to_global_phase(circuit_unitary(f), u, 1e-9)) << s;
    }
    EXPECT_EQ(fold_global(c, 1), c);
    EXPECT_THROW(fold_global(c, 2), std::invalid_argument);
    EXPECT_THROW(fold_global(c, 0), std::invalid_argument);
}

TEST(FoldRandom, GateCountWithinRoundingAndUnitaryKept) {
    const auto c = sample_circuit();
    const auto u = circuit_unitary(c);
    const double n = static_cast<double>(c.gate_count());
    for (double s : {1.0, 1.4, 2.0, 3.0, 4.5, 5.0, 7.0, 15.0}) {
        for (std::uint64_t seed = 0; seed < 5; seed++) {
            const auto f = fold_gates_random(c, s, seed);
            EXPECT_LE(std::abs(static_cast<double>(f.gate_count()) - s * n), 1.0) << s;
            EXPECT_TRUE(equal_up_to_global_phase(circuit_unitary(f), u, 1e-9)) << s;
            EXPECT_EQ(f.size() - f.gate_count(), c.size() - c.gate_count());
        }
    }
    EXPECT_THROW(fold_gates_random(c, 0.5, 0), std::invalid_argument);
}

TEST(FoldRandom, OddIntegerScalesFoldEveryGateUniformly) {
    const auto c = sample_circuit();
    EXPECT_EQ(fold_gates_random(c, 3.0, 1), fold_gates_random(c, 3.0, 2));
    EXPECT_EQ(fold_gates_random(c, 1.0, 9), c);
}

TEST(FoldRandom, SubsetDependsOnSeedOnly) {
    const auto c = sample_circuit();
    EXPECT_EQ(fold_gates_random(c, 2.0, 42), fold_gates_random(c, 2.0, 42));
    std::set<std::string> distinct;
    for (std::uint64_t seed = 0; seed < 20; seed++) {
        distinct.insert(to_json(fold_gates_random(c, 2.0, seed)).dump());
    }
    EXPECT_GT(distinct.size(), 1u);
}

TEST(Extrapolate, ExactOnMatchingPolynomials) {
    const std::vector<double> xs = {1, 3, 5, 7};
    std::vector<std::pair<double, double>> lin, quad;
    for (double x : xs) {
        lin.emplace_back(x, 0.4 - 0.03 * x);
        quad.emplace_back(x, 0.4 - 0.03 * x + 0.002 * x * x);
    }
    EXPECT_NEAR(extrapolate(lin, Extrapolator::Linear), 0.4, 1e-12);
    EXPECT_NEAR(extrapolate(quad, Extrapolator::Quadratic), 0.4, 1e-12);
    EXPECT_NEAR(extrapolate(quad, Extrapolator::Richardson), 0.4, 1e-12);
}

TEST(Extrapolate, RichardsonRecoversDegreeKMinusOne) {
    std::mt19937_64 gen(51);
    std::uniform_real_distribution<double> coef(-1, 1);
    for (std::size_t k = 2; k <= 8; k++) {
        const auto xs = ZneConfig::odd_scale_factors(k);
        // Coefficients scaled so the polynomial stays O(1) on [1, x_max], like a
        // bounded expectation value.
        std::vector<double> c(k);
        for (std::size_t j = 0; j < k; j++) {
            c[j] = coef(gen) / std::pow(xs.back(), static_cast<double>(j));
        }
        std::vector<std::pair<double, double>> pts;
        for (double x : xs) {
            pts.emplace_back(x, polyval(c, x));
        }
        EXPECT_NEAR(extrapolate(pts, Extrapolator::Richardson), c[0], 1e-9) << k;
    }
}

TEST(Extrapolate, Errors) {
    const std::vector<std::pair<double, double>> one = {{1, 0.5}};
    const std::vector<std::pair<double, double>> two = {{1, 0.5}, {3, 0.4}};
    const std::vector<std::pair<double, double>> dup = {{1, 0.5}, {1, 0.4}, {3, 0.1}};
    EXPECT_THROW(extrapolate(one, Extrapolator::Linear), std::invalid_argument);
    EXPECT_THROW(extrapolate(two, Extrapolator::Quadratic), std::invalid_argument);
    EXPECT_THROW(extrapolate(dup, Extrapolator::Richardson), std::invalid_argument);
    EXPECT_NEAR(extrapolate(two, Extrapolator::Linear), 0.55, 1e-14);
}

TEST(ZneConfig, Validation) {
    ZneConfig c;
    EXPECT_NO_THROW(c.validate());
    c.scale_factors = {1, 3, 5};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.allow_any_count = true;
    EXPECT_NO_THROW(c.validate());
    c.scale_factors = {1, 2, 3, 4};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.folding = Folding::RandomGates;
    EXPECT_NO_THROW(c.validate());
    c.scale_factors = {2, 3, 4, 5};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c.scale_factors = {1, 5, 3, 7};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    EXPECT_EQ(ZneConfig::odd_scale_factors(8), (std::vector<double>{1, 3, 5, 7, 9, 11, 13, 15}));
}

TEST(ZneConfig, JsonRoundTrip) {
    ZneConfig c;
    c.scale_factors = ZneConfig::odd_scale_factors(8);
    c.folding = Folding::RandomGates;
    c.extrapolator = Extrapolator::Richardson;
    c.seed = 77;
    const auto back = zne_config_from_json(to_json(c));
    EXPECT_EQ(back.scale_factors, c.scale_factors);
    EXPECT_EQ(back.folding, c.folding);
    EXPECT_EQ(back.extrapolator, c.extrapolator);
    EXPECT_EQ(back.seed, c.seed);
    const auto counted = zne_config_from_json(nlohmann::ordered_json::parse(R"({"scale_factors": 6})"));
    EXPECT_EQ(counted.scale_factors, ZneConfig::odd_scale_factors(6));
    EXPECT_THROW(zne_config_from_json(nlohmann::ordered_json::parse(R"({"folding": "local"})")),
                 std::invalid_argument);
}

TEST(ZneExecute, NoiselessExecutorIsUnchanged) {
    const auto c = sample_circuit();
    for (auto e : kAllExtrapolators) {
        ZneConfig cfg;
        cfg.extrapolator = e;
        const auto r = zne_execute(c, [](const Circuit &, std::uint64_t) { return 0.3125; }, cfg);
        EXPECT_NEAR(r.mitigated, 0.3125, 1e-12);
        ASSERT_EQ(r.raw_points.size(), 4u);
    }
}

TEST(ZneExecute, LinearNoiseIsRemovedExactly) {
    const auto c = sample_circuit();
    const double base = static_cast<double>(c.gate_count());
    ZneConfig cfg;
    const auto r = zne_execute(
        c,
        [&](const Circuit &folded, std::uint64_t) {
            return 0.5 - 0.01 * static_cast<double>(folded.gate_count()) / base;
        },
        cfg);
    EXPECT_NEAR(r.mitigated, 0.5, 1e-12);
    EXPECT_NEAR(r.raw_points[3].value, 0.5 - 0.07, 1e-12);
}

TEST(ZneExecute, SeedsAreDerivedPerScale) {
    const auto c = sample_circuit();
    ZneConfig cfg;
    cfg.seed = 5;
    std::mutex mu;
    std::vector<std::uint64_t> seen;
    zne_execute(
        c,
        [&](const Circuit &, std::uint64_t seed) {
            std::lock_guard<std::mutex> lock(mu);
            seen.push_back(seed);
            return 0.0;
        },
        cfg);
    std::sort(seen.begin(), seen.end());
    std::vector<std::uint64_t> expected;
    for (std::size_t k = 0; k < 4; k++) {
        expected.push_back(scale_seed(cfg, k));
    }
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(seen, expected);
    EXPECT_EQ(std::set<std::uint64_t>(seen.begin(), seen.end()).size(), 4u);
}

TEST(ZneExecute, ExecutorErrorsPropagate) {
    const auto c = sample_circuit();
    EXPECT_THROW(zne_execute(
                     c, [](const Circuit &, std::uint64_t) -> double { throw std::runtime_error("backend down"); },
                     ZneConfig{}),
                 std::runtime_error);
}

TEST(ZneExecute, MultiColumnsAreIndependent) {
    const auto c = sample_circuit();
    const double base = static_cast<double>(c.gate_count());
    const auto r = zne_execute_multi(
        c,
        [&](const Circuit &f, std::uint64_t) {
            const double s = static_cast<double>(f.gate_count()) / base;
            return std::vector<double>{1 - 0.1 * s, 2 + 0.2 * s};
        },
        ZneConfig{});
    ASSERT_EQ(r.mitigated.size(), 2u);
    EXPECT_NEAR(r.mitigated[0], 1.0, 1e-12);
    EXPECT_NEAR(r.mitigated[1], 2.0, 1e-12);
}

TEST(ConfusionMatrix, ValidationAndComposite) {
    using Q = ConfusionMatrix::Qubit;
    EXPECT_THROW(ConfusionMatrix(std::vector<Q>{Q{{{0.9, 0.2}, {0.2, 0.8}}}}), std::invalid_argument);
    EXPECT_THROW(ConfusionMatrix(std::vector<Q>{Q{{{1.1, 0.0}, {-0.1, 1.0}}}}), std::invalid_argument);
    const ConfusionMatrix a(std::vector<Q>{Q{{{0.9, 0.0}, {0.1, 1.0}}}, Q{{{1.0, 0.2}, {0.0, 0.8}}}});
    const auto m = a.composite();
    // Column |10>: qubit 0 true 1 (never flips), qubit 1 true 0 (never flips).
    EXPECT_NEAR(m(2, 2).real(), 1.0, 1e-15);
    // Column |01>: qubit 0 true 0 reads 1 w.p. 0.1; qubit 1 true 1 reads 0 w.p. 0.2.
    EXPECT_NEAR(m(0, 1).real(), 0.9 * 0.2, 1e-15);
    EXPECT_NEAR(m(3, 1).real(), 0.1 * 0.8, 1e-15);
    for (std::size_t c = 0; c < 4; c++) {
        double col = 0;
        for (std::size_t r = 0; r < 4; r++) {
            col += m(r, c).real();
        }
        EXPECT_NEAR(col, 1.0, 1e-15);
    }
}

TEST(Rem, ExactRoundTrip) {
    std::mt19937_64 gen(52);
    std::uniform_real_distribution<double> u(0, 1);
    for (std::size_t n : {1u, 2u, 3u}) {
        const auto a = ConfusionMatrix::uniform(n, 0.018, 0.025);
        for (int trial = 0; trial < 10; trial++) {
            std::vector<double> p(std::size_t{1} << n);
            for (auto &v : p) {
                v = u(gen);
            }
            const double total = std::accumulate(p.begin(), p.end(), 0.0);
            for (auto &v : p) {
                v /= total;
            }
            const auto r = rem_apply(a.apply(p), a);
            for (std::size_t k = 0; k < p.size(); k++) {
                EXPECT_NEAR(r.quasi[k], p[k], 1e-10);
                EXPECT_NEAR(r.projected[k], p[k], 1e-10);
            }
        }
    }
}

TEST(Rem, SampledRecovery) {
    const auto a = ConfusionMatrix::uniform(2, 0.018, 0.018);
    const std::vector<double> p = {0.1, 0.0, 0.3, 0.6};
    const auto counts = apply_readout_noise(p, 100000, a, 3);
    EXPECT_TRUE(counts.consistent());
    const auto r = rem_apply(counts, a);
    double tv = 0;
    for (std::size_t k = 0; k < 4; k++) {
        tv += std::abs(r.projected[k] - p[k]) / 2;
        EXPECT_GE(r.projected[k], 0.0);
    }
    EXPECT_LE(tv, 0.01);
    EXPECT_EQ(r.projected_counts.shots, 100000u);
    EXPECT_TRUE(r.projected_counts.consistent());
}

TEST(Rem, DimensionMismatchThrows) {
    const auto a = ConfusionMatrix::uniform(2, 0.01, 0.01);
    const std::vector<double> p = {0.5, 0.5};
    EXPECT_THROW(rem_apply(p, a), std::invalid_argument);
}

TEST(ProjectToSimplex, KnownCasesAndProperties) {
    const std::vector<double> a = {0.6, 0.6};
    EXPECT_EQ(project_to_simplex(a), (std::vector<double>{0.5, 0.5}));
    const std::vector<double> b = {1.2, -0.2};
    const auto pb = project_to_simplex(b);
    EXPECT_NEAR(pb[0], 1.0, 1e-15);
    EXPECT_NEAR(pb[1], 0.0, 1e-15);

    std::mt19937_64 gen(53);
    std::normal_distribution<double> g(0.25, 0.3);
    for (int trial = 0; trial < 100; trial++) {
        std::vector<double> v(8);
        for (auto &x : v) {
            x = g(gen);
        }
        const auto x = project_to_simplex(v);
        EXPECT_NEAR(std::accumulate(x.begin(), x.end(), 0.0), 1.0, 1e-12);
        // x = max(v - tau, 0) for a single tau.
        double tau = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t k = 0; k < v.size(); k++) {
            EXPECT_GE(x[k], 0.0);
            if (x[k] > 0) {
                if (std::isnan(tau)) {
                    tau = v[k] - x[k];
                }
                EXPECT_NEAR(v[k] - x[k], tau, 1e-12);
            }
        }
        for (std::size_t k = 0; k < v.size(); k++) {
            if (x[k] == 0) {
                EXPECT_LE(v[k], tau + 1e-12);
            }
        }
        const auto again = project_to_simplex(x);
        for (std::size_t k = 0; k < v.size(); k++) {
            EXPECT_NEAR(again[k], x[k], 1e-14);
        }
    }
    EXPECT_THROW(project_to_simplex(std::vector<double>{}), std::invalid_argument);
}

TEST(ReadoutNoise, FlipRatesAndDeterminism) {
    const auto a = ConfusionMatrix::uniform(1, 0.05, 0.2);
    Counts zeros;
    zeros.histogram = {{"0", 100000}};
    zeros.shots = 100000;
    const auto noisy = apply_readout_noise(zeros, a, 9);
    EXPECT_NEAR(static_cast<double>(noisy.get("1")) / 1e5, 0.05, 0.004);
    EXPECT_EQ(noisy.histogram, apply_readout_noise(zeros, a, 9).histogram);
    const auto clean = apply_readout_noise(zeros, ConfusionMatrix::uniform(1, 0, 0), 9);
    EXPECT_EQ(clean.histogram, zeros.histogram);
}

}  // namespace
}  // namespace oqs
