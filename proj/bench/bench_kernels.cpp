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

// Dense reference vs strided kernels (one thread and all threads).

#include <vector>

#include <benchmark/benchmark.h>
#include <omp.h>

#include "oqs/circuit.hpp"
#include "oqs/kernels.hpp"
#include "oqs/noise.hpp"
#include "oqs/rng.hpp"

namespace {

oqs::ComplexMatrix random_state(std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    oqs::Rng rng(n);
    oqs::ComplexMatrix a(dim, dim);
    for (std::size_t r = 0; r < dim; r++) {
        for (std::size_t c = 0; c < dim; c++) {
            a(r, c) = {rng.uniform() - 0.5, rng.uniform() - 0.5};
        }
    }
    oqs::ComplexMatrix rho = a * a.adjoint();
    return rho * (1.0 / rho.trace().real());
}

const oqs::ComplexMatrix &cry() {
    static const oqs::ComplexMatrix m = oqs::gate_matrix(oqs::make_gate(oqs::GateKind::CRY, {0, 1}, {0.7}));
    return m;
}

void BM_ConjugateReference(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto rho = random_state(n);
    const std::size_t pos[] = {1, n - 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(oqs::kernels::conjugate_reference(rho, cry(), pos, n));
    }
}

void conjugate_with_threads(benchmark::State &state, int threads) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto rho = random_state(n);
    const std::size_t pos[] = {1, n - 1};
    const int saved = omp_get_max_threads();
    omp_set_num_threads(threads > 0 ? threads : omp_get_num_procs());
    for (auto _ : state) {
        auto m = rho;
        oqs::kernels::conjugate(m, cry(), pos, n);
        benchmark::DoNotOptimize(m.data().data());
    }
    omp_set_num_threads(saved);
}

void BM_ConjugateSerial(benchmark::State &state) { conjugate_with_threads(state, 1); }
void BM_ConjugateParallel(benchmark::State &state) { conjugate_with_threads(state, 0); }

void BM_DepolarizingKraus(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto rho = random_state(n);
    const auto ops = oqs::depolarizing_kraus(0.03, 2);
    const std::size_t pos[] = {0, n - 1};
    for (auto _ : state) {
        auto m = rho;
        oqs::kernels::apply_kraus(m, ops.kraus_ops, pos, n);
        benchmark::DoNotOptimize(m.data().data());
    }
}

}  // namespace

BENCHMARK(BM_ConjugateReference)->DenseRange(3, 7);
BENCHMARK(BM_ConjugateSerial)->DenseRange(3, 10);
BENCHMARK(BM_ConjugateParallel)->DenseRange(3, 10);
BENCHMARK(BM_DepolarizingKraus)->DenseRange(3, 10);

BENCHMARK_MAIN();
