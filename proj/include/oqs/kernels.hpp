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

// Dense-matrix kernels that apply a k-qubit operator to a 2^n x 2^n matrix.
//
// The strided kernels touch each matrix entry O(2^k) times and split their
// outer loop across OpenMP threads once the register is large enough. The
// *_reference functions build the full 2^n operator explicitly and multiply
// densely; they are slow and exist so tests and benchmarks have an
// independent path to compare against.
//
// `positions` lists register qubits (0 = most significant bit). positions[0]
// maps to the most significant bit of the operator's own index, so two-qubit
// gates take (control, target).

#ifndef OQS_KERNELS_HPP
#define OQS_KERNELS_HPP

#include <cstddef>
#include <span>

#include "oqs/numerics.hpp"

namespace oqs::kernels {

/// Registers at least this wide (2^n rows) use the OpenMP loops.
inline constexpr std::size_t kParallelMinDim = 64;

/// m <- U m. `m` has 2^n rows and any number of columns.
void left_multiply(ComplexMatrix &m, const ComplexMatrix &op, std::span<const std::size_t> positions, std::size_t n);

/// m <- m U^H. `m` has 2^n columns.
void right_multiply_adjoint(
    ComplexMatrix &m, const ComplexMatrix &op, std::span<const std::size_t> positions, std::size_t n);

/// rho <- U rho U^H.
void conjugate(ComplexMatrix &rho, const ComplexMatrix &op, std::span<const std::size_t> positions, std::size_t n);

/// rho <- sum_k K rho K^H.
void apply_kraus(
    ComplexMatrix &rho, std::span<const ComplexMatrix> kraus, std::span<const std::size_t> positions, std::size_t n);

/// The operator lifted to the full register (identity elsewhere).
ComplexMatrix embed_operator(const ComplexMatrix &op, std::span<const std::size_t> positions, std::size_t n);

ComplexMatrix conjugate_reference(
    const ComplexMatrix &rho, const ComplexMatrix &op, std::span<const std::size_t> positions, std::size_t n);

ComplexMatrix apply_kraus_reference(
    const ComplexMatrix &rho, std::span<const ComplexMatrix> kraus, std::span<const std::size_t> positions,
    std::size_t n);

}  // namespace oqs::kernels

#endif
