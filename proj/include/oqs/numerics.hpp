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

#ifndef OQS_NUMERICS_HPP
#define OQS_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace oqs {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Used for states, gates and Kraus operators.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    /// Row-by-row literal, e.g. `{{1, 0}, {0, -1}}`.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    /// |v><v| for a column vector v.
    static ComplexMatrix outer(std::span<const Complex> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex &operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<Complex> data() noexcept { return data_; }
    std::span<const Complex> data() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    Complex trace() const;
    /// Largest absolute entry.
    double max_abs() const;
    bool all_finite() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
    friend bool operator==(const ComplexMatrix &a, const ComplexMatrix &b) = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Largest elementwise |a - b|. Dimensions must agree.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Hermitian within `tol` (elementwise).
bool is_hermitian(const ComplexMatrix &m, double tol = 1e-10);

/// True when a == e^{i phi} b for some phase. The phase is fixed by rotating the
/// largest-magnitude entry of each matrix to the positive real axis.
bool equal_up_to_global_phase(const ComplexMatrix &a, const ComplexMatrix &b, double tol);

/// Reduced operator after tracing out `traced` qubits of an n-qubit operator.
/// Qubit 0 is the most significant bit of the basis index.
ComplexMatrix partial_trace(const ComplexMatrix &rho, std::size_t n_qubits, std::span<const std::size_t> traced);

/// Reorders qubits: output qubit k is input qubit `order[k]`.
ComplexMatrix permute_qubits(const ComplexMatrix &m, std::span<const std::size_t> order);

/// Eigenvalues of a Hermitian matrix in ascending order (cyclic Jacobi on the
/// real symmetric embedding).
std::vector<double> eig_hermitian(const ComplexMatrix &m);

/// Eigenpairs of a real symmetric matrix stored row-major. Eigenvectors are the
/// columns of `vectors`. Values are unsorted.
struct SymmetricEigen {
    std::vector<double> values;
    std::vector<double> vectors;
};
SymmetricEigen jacobi_eigen_symmetric(std::vector<double> a, std::size_t n);

/// Least-squares polynomial fit. Returns coefficients c0, c1, ... (ascending powers).
std::vector<double> polyfit_lsq(std::span<const std::pair<double, double>> points, std::size_t degree);

double polyval(std::span<const double> coeffs, double x);

/// Moore-Penrose pseudo-inverse via the eigendecomposition of m^H m.
ComplexMatrix pseudo_inverse(const ComplexMatrix &m);

/// 0.5 * sum |eig(a - b)| for Hermitian a, b.
double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b);

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
}  // namespace pauli

}  // namespace oqs

#endif
