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

#include "oqs/kernels.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace oqs::kernels {

namespace {

constexpr std::size_t kMaxOperatorQubits = 4;

struct Layout {
    std::size_t dim = 0;
    std::size_t local_dim = 0;
    std::vector<std::size_t> offsets;  // register index of each local basis state
    std::vector<std::size_t> bases;    // register indices with every operator bit cleared
};

Layout make_layout(const ComplexMatrix &op, std::span<const std::size_t> positions, std::size_t n) {
    const std::size_t k = positions.size();
    if (k == 0 || k > kMaxOperatorQubits) {
        throw std::invalid_argument("kernel: operator must act on 1.." + std::to_string(kMaxOperatorQubits) + " qubits");
    }
    Layout l;
    l.dim = std::size_t{1} << n;
    l.local_dim = std::size_t{1} << k;
    if (op.rows() != l.local_dim || op.cols() != l.local_dim) {
        throw std::invalid_argument("kernel: operator dimension does not match its qubit count");
    }
    std::size_t op_mask = 0;
    std::vector<std::size_t> masks(k);
    for (std::size_t t = 0; t < k; t++) {
        if (positions[t] >= n) {
            throw std::out_of_range("kernel: qubit " + std::to_string(positions[t]) + " outside register");
        }
        masks[t] = std::size_t{1} << (n - 1 - positions[t]);
        if (op_mask & masks[t]) {
            throw std::invalid_argument("kernel: repeated qubit");
        }
        op_mask |= masks[t];
    }
    l.offsets.assign(l.local_dim, 0);
    for (std::size_t a = 0; a < l.local_dim; a++) {
        for (std::size_t t = 0; t < k; t++) {
            if (a & (std::size_t{1} << (k - 1 - t))) {
                l.offsets[a] |= masks[t];
            }
        }
    }
    l.bases.reserve(l.dim / l.local_dim);
    for (std::size_t x = 0; x < l.dim; x++) {
        if ((x & op_mask) == 0) {
            l.bases.push_back(x);
        }
    }
    return l;
}

}  // namespace

void left_multiply(ComplexMatrix &m, const ComplexMatrix &op, std::span<const std::size_t> positions, std::size_t n) {
    const Layout l = make_layout(op, positions, n);
    if (m.rows() != l.dim) {
        throw std::invalid_argument("left_multiply: matrix rows do not match register");
    }
    const std::size_t cols = m.cols();
    const std::size_t kd = l.local_dim;
    const auto nb = static_cast<long long>(l.bases.size());
    Complex *data = m.data().data();
    const Complex *u = op.data().data();

#pragma omp parallel for schedule(static) if (l.dim >= kParallelMinDim)
    for (long long bi = 0; bi < nb; bi++) {
        std::array<Complex, 16> in{};
        const std::size_t base = l.bases[static_cast<std::size_t>(bi)];
        for (std::size_t c = 0; c < cols; c++) {
            for (std::size_t a = 0; a < kd; a++) {
                in[a] = data[(base | l.offsets[a]) * cols + c];
            }
            for (std::size_t a = 0; a < kd; a++) {
                Complex acc = 0;
                for (std::size_t b = 0; b < kd; b++) {
                    acc += u[a * kd + b] * in[b];
                }
                data[(base | l.offsets[a]) * cols + c] = acc;
            }
        }
    }
}

void right_multiply_adjoint(
    ComplexMatrix &m, const ComplexMatrix &op, std::span<const std::size_t> positions, std::size_t n) {
    const Layout l = make_layout(op, positions, n);
    if (m.cols() != l.dim) {
        throw std::invalid_argument("right_multiply_adjoint: matrix columns do not match register");
    }
    const std::size_t cols = m.cols();
    const std::size_t kd = l.local_dim;
    const auto rows = static_cast<long long>(m.rows());
    Complex *data = m.data().data();
    const Complex *u = op.data().data();

#pragma omp parallel for schedule(static) if (l.dim >= kParallelMinDim)
    for (long long r = 0; r < rows; r++) {
        std::array<Complex, 16> in{};
        Complex *row = data + static_cast<std::size_t>(r) * cols;
        for (std::size_t base : l.bases) {
            for (std::size_t a = 0; a < kd; a++) {
                in[a] = row[base | l.offsets[a]];
            }
            for (std::size_t a = 0; a < kd; a++) {
                Complex acc = 0;
                for (std::size_t b = 0; b < kd; b++) {
                    acc += std::conj(u[a * kd + b]) * in[b];
                }
                row[base | l.offsets[a]] = acc;
            }
        }
    }
}

void conjugate(ComplexMatrix &rho, const ComplexMatrix &op, std::span<const std::size_t> positions, std::size_t n) {
    left_multiply(rho, op, positions, n);
    right_multiply_adjoint(rho, op, positions, n);
}

void apply_kraus(
    ComplexMatrix &rho, std::span<const ComplexMatrix> kraus, std::span<const std::size_t> positions,
    std::size_t n) {
    if (kraus.empty()) {
        throw std::invalid_argument("apply_kraus: empty Kraus set");
    }
    if (kraus.size() == 1) {
        conjugate(rho, kraus[0], positions, n);
        return;
    }
    ComplexMatrix acc(rho.rows(), rho.cols());
    for (const auto &k : kraus) {
        ComplexMatrix term = rho;
        conjugate(term, k, positions, n);
        acc += term;
    }
    rho = std::move(acc);
}

ComplexMatrix embed_operator(const ComplexMatrix &op, std::span<const std::size_t> positions, std::size_t n) {
    const std::size_t k = positions.size();
    if (op.rows() != (std::size_t{1} << k) || op.cols() != op.rows()) {
        throw std::invalid_argument("embed_operator: operator dimension does not match its qubit count");
    }
    ComplexMatrix full = kron(op, ComplexMatrix::identity(std::size_t{1} << (n - k)));
    // Full-register qubit j is taken from qubit order[j] of kron(op, I).
    std::vector<std::size_t> order(n, n);
    std::vector<bool> used(n, false);
    for (std::size_t t = 0; t < k; t++) {
        if (positions[t] >= n || used[positions[t]]) {
            throw std::invalid_argument("embed_operator: bad qubit list");
        }
        order[positions[t]] = t;
        used[positions[t]] = true;
    }
    std::size_t next = k;
    for (std::size_t j = 0; j < n; j++) {
        if (!used[j]) {
            order[j] = next++;
        }
    }
    return permute_qubits(full, order);
}

ComplexMatrix conjugate_reference(
    const ComplexMatrix &rho, const ComplexMatrix &op, std::span<const std::size_t> positions, std::size_t n) {
    const ComplexMatrix full = embed_operator(op, positions, n);
    return full * rho * full.adjoint();
}

ComplexMatrix apply_kraus_reference(
    const ComplexMatrix &rho, std::span<const ComplexMatrix> kraus, std::span<const std::size_t> positions,
    std::size_t n) {
    ComplexMatrix acc(rho.rows(), rho.cols());
    for (const auto &k : kraus) {
        acc += conjugate_reference(rho, k, positions, n);
    }
    return acc;
}

}  // namespace oqs::kernels
