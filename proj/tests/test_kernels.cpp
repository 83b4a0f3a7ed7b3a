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
#include <random>
#include <vector>

#include <gtest/gtest.h>
#include <omp.h>

#include "oqs/kernels.hpp"
#include "oqs/noise.hpp"
#include "test_util.hpp"

namespace oqs {
namespace {

std::vector<std::size_t> random_positions(std::size_t k, std::size_t n, std::mt19937_64 &gen) {
    std::vector<std::size_t> all(n);
    for (std::size_t q = 0; q < n; q++) {
        all[q] = q;
    }
    std::shuffle(all.begin(), all.end(), gen);
    all.resize(k);
    return all;
}

// Sizes straddle kParallelMinDim so both the serial and threaded loops run.
TEST(Kernels, ConjugateMatchesDenseReference) {
    std::mt19937_64 gen(21);
    for (std::size_t n = 1; n <= 7; n++) {
        for (std::size_t k = 1; k <= std::min<std::size_t>(n, 3); k++) {
            const auto rho = testing::random_density(std::size_t{1} << n, gen);
            const auto u = testing::random_unitary(std::size_t{1} << k, gen);
            const auto pos = random_positions(k, n, gen);
            auto fast = rho;
            kernels::conjugate(fast, u, pos, n);
            EXPECT_LT(max_abs_diff(fast, kernels::conjugate_reference(rho, u, pos, n)), 1e-12)
                << "n=" << n << " k=" << k;
        }
    }
}

TEST(Kernels, KrausMatchesDenseReference) {
    std::mt19937_64 gen(22);
    for (std::size_t n = 2; n <= 7; n++) {
        const auto rho = testing::random_density(std::size_t{1} << n, gen);
        const auto ch = depolarizing_kraus(0.2, 2);
        const auto pos = random_positions(2, n, gen);
        auto fast = rho;
        kernels::apply_kraus(fast, ch.kraus_ops, pos, n);
        EXPECT_LT(max_abs_diff(fast, kernels::apply_kraus_reference(rho, ch.kraus_ops, pos, n)), 1e-12);
        EXPECT_NEAR(fast.trace().real(), 1.0, 1e-12);
    }
}

TEST(Kernels, LeftMultiplyRectangular) {
    std::mt19937_64 gen(23);
    const std::size_t n = 3;
    const auto m = testing::random_matrix(8, 5, gen);
    const auto u = testing::random_unitary(2, gen);
    const std::size_t pos[] = {1};
    auto fast = m;
    kernels::left_multiply(fast, u, pos, n);
    EXPECT_LT(max_abs_diff(fast, kernels::embed_operator(u, pos, n) * m), 1e-12);
}

TEST(Kernels, EmbedOperatorOrdering) {
    // CNOT with control on qubit 2 and target on qubit 0 of a 3-qubit register.
    const ComplexMatrix cnot{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    const std::size_t pos[] = {2, 0};
    const auto full = kernels::embed_operator(cnot, pos, 3);
    // |001> (index 1) -> |101> (index 5)
    EXPECT_EQ(full(5, 1), Complex(1));
    EXPECT_EQ(full(0, 0), Complex(1));
}

TEST(Kernels, ThreadCountDoesNotChangeResult) {
    std::mt19937_64 gen(24);
    const std::size_t n = 8;
    const auto rho = testing::random_density(std::size_t{1} << n, gen);
    const auto u = testing::random_unitary(4, gen);
    const std::size_t pos[] = {6, 1};
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    auto serial = rho;
    kernels::conjugate(serial, u, pos, n);
    omp_set_num_threads(4);
    auto parallel = rho;
    kernels::conjugate(parallel, u, pos, n);
    omp_set_num_threads(saved);
    EXPECT_EQ(serial, parallel);
}

TEST(Kernels, RejectsBadPositions) {
    auto rho = ComplexMatrix::identity(4);
    const std::size_t repeated[] = {0, 0};
    const std::size_t out_of_range[] = {5};
    EXPECT_THROW(kernels::conjugate(rho, ComplexMatrix::identity(4), repeated, 2), std::invalid_argument);
    EXPECT_THROW(kernels::conjugate(rho, ComplexMatrix::identity(2), out_of_range, 2), std::out_of_range);
}

}  // namespace
}  // namespace oqs
