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

#include "oqs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace oqs {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw std::invalid_argument(
            "ComplexMatrix: " + std::to_string(data_.size()) + " entries for a " + std::to_string(rows_) + "x" +
            std::to_string(cols_) + " matrix");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("ComplexMatrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; k++) {
        m(k, k) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t k = 0; k < diag.size(); k++) {
        m(k, k) = diag[k];
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
    ComplexMatrix m(v.size(), v.size());
    for (std::size_t r = 0; r < v.size(); r++) {
        for (std::size_t c = 0; c < v.size(); c++) {
            m(r, c) = v[r] * std::conj(v[c]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols_; c++) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0;
    for (std::size_t k = 0; k < std::min(rows_, cols_); k++) {
        t += (*this)(k, k);
    }
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0;
    for (const auto &z : data_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const Complex &z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

static void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator+=");
    for (std::size_t k = 0; k < data_.size(); k++) {
        data_[k] += other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator-=");
    for (std::size_t k = 0; k < data_.size(); k++) {
        data_[k] -= other.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (auto &z : data_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix product: inner dimension mismatch");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); r++) {
        for (std::size_t k = 0; k < a.cols(); k++) {
            const Complex v = a(r, k);
            if (v == Complex(0)) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols(); c++) {
                out(r, c) += v * b(k, c);
            }
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ar++) {
        for (std::size_t ac = 0; ac < a.cols(); ac++) {
            const Complex v = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); br++) {
                for (std::size_t bc = 0; bc < b.cols(); bc++) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
                }
            }
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0;
    for (std::size_t k = 0; k < a.data().size(); k++) {
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    }
    return m;
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (!m.is_square()) {
        return false;
    }
    for (std::size_t r = 0; r < m.rows(); r++) {
        for (std::size_t c = r; c < m.cols(); c++) {
            if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool equal_up_to_global_phase(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    std::size_t best = 0;
    double best_abs = -1;
    for (std::size_t k = 0; k < a.data().size(); k++) {
        double v = std::abs(a.data()[k]);
        if (v > best_abs + 1e-12) {
            best_abs = v;
            best = k;
        }
    }
    if (best_abs <= tol) {
        return b.max_abs() <= tol;
    }
    Complex pb = b.data()[best];
    if (std::abs(pb) <= tol) {
        return false;
    }
    Complex ra = std::conj(a.data()[best]) / std::abs(a.data()[best]);
    Complex rb = std::conj(pb) / std::abs(pb);
    for (std::size_t k = 0; k < a.data().size(); k++) {
        if (std::abs(a.data()[k] * ra - b.data()[k] * rb) > tol) {
            return false;
        }
    }
    return true;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, std::size_t n_qubits, std::span<const std::size_t> traced) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (rho.rows() != dim || rho.cols() != dim) {
        throw std::invalid_argument("partial_trace: matrix is not 2^n x 2^n");
    }
    std::vector<bool> is_traced(n_qubits, false);
    for (auto q : traced) {
        if (q >= n_qubits) {
            throw std::out_of_range("partial_trace: qubit index " + std::to_string(q) + " out of range");
        }
        if (is_traced[q]) {
            throw std::invalid_argument("partial_trace: qubit listed twice");
        }
        is_traced[q] = true;
    }
    std::vector<std::size_t> kept_masks;
    std::vector<std::size_t> traced_masks;
    // Qubit q lives at bit (n - 1 - q); iterate most significant first.
    for (std::size_t q = 0; q < n_qubits; q++) {
        std::size_t mask = std::size_t{1} << (n_qubits - 1 - q);
        (is_traced[q] ? traced_masks : kept_masks).push_back(mask);
    }
    auto expand = [](std::size_t index, const std::vector<std::size_t> &masks) {
        std::size_t full = 0;
        for (std::size_t k = 0; k < masks.size(); k++) {
            if (index & (std::size_t{1} << (masks.size() - 1 - k))) {
                full |= masks[k];
            }
        }
        return full;
    };
    const std::size_t kept_dim = std::size_t{1} << kept_masks.size();
    const std::size_t traced_dim = std::size_t{1} << traced_masks.size();
    std::vector<std::size_t> kept_full(kept_dim);
    std::vector<std::size_t> traced_full(traced_dim);
    for (std::size_t i = 0; i < kept_dim; i++) {
        kept_full[i] = expand(i, kept_masks);
    }
    for (std::size_t k = 0; k < traced_dim; k++) {
        traced_full[k] = expand(k, traced_masks);
    }
    ComplexMatrix out(kept_dim, kept_dim);
    for (std::size_t i = 0; i < kept_dim; i++) {
        for (std::size_t j = 0; j < kept_dim; j++) {
            Complex acc = 0;
            for (std::size_t k = 0; k < traced_dim; k++) {
                acc += rho(kept_full[i] | traced_full[k], kept_full[j] | traced_full[k]);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

ComplexMatrix permute_qubits(const ComplexMatrix &m, std::span<const std::size_t> order) {
    const std::size_t n = order.size();
    const std::size_t dim = std::size_t{1} << n;
    if (m.rows() != dim || m.cols() != dim) {
        throw std::invalid_argument("permute_qubits: matrix is not 2^n x 2^n");
    }
    std::vector<std::size_t> source(dim);
    for (std::size_t x = 0; x < dim; x++) {
        std::size_t y = 0;
        for (std::size_t k = 0; k < n; k++) {
            if (x & (std::size_t{1} << (n - 1 - k))) {
                y |= std::size_t{1} << (n - 1 - order[k]);
            }
        }
        source[x] = y;
    }
    ComplexMatrix out(dim, dim);
    for (std::size_t r = 0; r < dim; r++) {
        for (std::size_t c = 0; c < dim; c++) {
            out(r, c) = m(source[r], source[c]);
        }
    }
    return out;
}

SymmetricEigen jacobi_eigen_symmetric(std::vector<double> a, std::size_t n) {
    if (a.size() != n * n) {
        throw std::invalid_argument("jacobi_eigen_symmetric: size mismatch");
    }
    std::vector<double> v(n * n, 0.0);
    for (std::size_t k = 0; k < n; k++) {
        v[k * n + k] = 1.0;
    }
    auto at = [&](std::size_t r, std::size_t c) -> double & { return a[r * n + c]; };

    double total = 0;
    for (double x : a) {
        total += x * x;
    }
    const double tol = 1e-12 * std::max(std::sqrt(total), 1e-300);

    for (int sweep = 0; sweep < 100; sweep++) {
        double off = 0;
        for (std::size_t p = 0; p < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                off += 2 * at(p, q) * at(p, q);
            }
        }
        if (std::sqrt(off) <= tol) {
            break;
        }
        for (std::size_t p = 0; p < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                const double apq = at(p, q);
                if (std::abs(apq) < 1e-300) {
                    continue;
                }
                const double theta = (at(q, q) - at(p, p)) / (2 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1);
                const double s = t * c;
                for (std::size_t r = 0; r < n; r++) {
                    const double arp = at(r, p);
                    const double arq = at(r, q);
                    at(r, p) = c * arp - s * arq;
                    at(r, q) = s * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; r++) {
                    const double apr = at(p, r);
                    const double aqr = at(q, r);
                    at(p, r) = c * apr - s * aqr;
                    at(q, r) = s * apr + c * aqr;
                }
                at(p, q) = 0;
                at(q, p) = 0;
                for (std::size_t r = 0; r < n; r++) {
                    const double vrp = v[r * n + p];
                    const double vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    SymmetricEigen out;
    out.values.resize(n);
    for (std::size_t k = 0; k < n; k++) {
        out.values[k] = at(k, k);
    }
    out.vectors = std::move(v);
    return out;
}

// Real symmetric embedding [[A, -B], [B, A]] of A + iB.
static std::vector<double> real_embedding(const ComplexMatrix &m) {
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    std::vector<double> out(4 * r * c);
    const std::size_t width = 2 * c;
    for (std::size_t i = 0; i < r; i++) {
        for (std::size_t j = 0; j < c; j++) {
            const double re = m(i, j).real();
            const double im = m(i, j).imag();
            out[i * width + j] = re;
            out[i * width + c + j] = -im;
            out[(r + i) * width + j] = im;
            out[(r + i) * width + c + j] = re;
        }
    }
    return out;
}

std::vector<double> eig_hermitian(const ComplexMatrix &m) {
    if (!is_hermitian(m, 1e-10)) {
        throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
    }
    const std::size_t n = m.rows();
    auto eig = jacobi_eigen_symmetric(real_embedding(m), 2 * n);
    std::sort(eig.values.begin(), eig.values.end());
    // Every eigenvalue of the embedding appears twice.
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; k++) {
        out[k] = 0.5 * (eig.values[2 * k] + eig.values[2 * k + 1]);
    }
    return out;
}

std::vector<double> polyfit_lsq(std::span<const std::pair<double, double>> points, std::size_t degree) {
    const std::size_t cols = degree + 1;
    const std::size_t rows = points.size();
    std::set<double> distinct;
    for (const auto &[x, y] : points) {
        if (!std::isfinite(x) || !std::isfinite(y)) {
            throw std::invalid_argument("polyfit_lsq: non-finite sample");
        }
        distinct.insert(x);
    }
    if (distinct.size() < cols) {
        throw std::invalid_argument(
            "polyfit_lsq: degree " + std::to_string(degree) + " needs " + std::to_string(cols) +
            " distinct abscissae, got " + std::to_string(distinct.size()));
    }

    // Householder QR of the Vandermonde matrix, column-major.
    std::vector<double> a(rows * cols);
    std::vector<double> b(rows);
    for (std::size_t i = 0; i < rows; i++) {
        double p = 1;
        for (std::size_t j = 0; j < cols; j++) {
            a[j * rows + i] = p;
            p *= points[i].first;
        }
        b[i] = points[i].second;
    }
    for (std::size_t k = 0; k < cols; k++) {
        double norm = 0;
        for (std::size_t i = k; i < rows; i++) {
            norm += a[k * rows + i] * a[k * rows + i];
        }
        norm = std::sqrt(norm);
        if (norm == 0) {
            throw std::invalid_argument("polyfit_lsq: rank-deficient design matrix");
        }
        const double alpha = a[k * rows + k] > 0 ? -norm : norm;
        std::vector<double> v(rows - k);
        for (std::size_t i = k; i < rows; i++) {
            v[i - k] = a[k * rows + i];
        }
        v[0] -= alpha;
        double vnorm2 = 0;
        for (double x : v) {
            vnorm2 += x * x;
        }
        if (vnorm2 == 0) {
            continue;
        }
        auto reflect = [&](double *col) {
            double dot = 0;
            for (std::size_t i = k; i < rows; i++) {
                dot += v[i - k] * col[i];
            }
            const double f = 2 * dot / vnorm2;
            for (std::size_t i = k; i < rows; i++) {
                col[i] -= f * v[i - k];
            }
        };
        for (std::size_t j = k; j < cols; j++) {
            reflect(&a[j * rows]);
        }
        reflect(b.data());
    }
    std::vector<double> coeffs(cols);
    for (std::size_t k = cols; k-- > 0;) {
        double acc = b[k];
        for (std::size_t j = k + 1; j < cols; j++) {
            acc -= a[j * rows + k] * coeffs[j];
        }
        coeffs[k] = acc / a[k * rows + k];
    }
    return coeffs;
}

double polyval(std::span<const double> coeffs, double x) {
    double acc = 0;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        acc = acc * x + coeffs[k];
    }
    return acc;
}

ComplexMatrix pseudo_inverse(const ComplexMatrix &m) {
    const std::size_t r = m.rows();
    const std::size_t c = m.cols();
    if (r == 0 || c == 0) {
        return ComplexMatrix(c, r);
    }
    const std::vector<double> emb = real_embedding(m);
    const std::size_t er = 2 * r;
    const std::size_t ec = 2 * c;

    // Gram matrix E^T E.
    std::vector<double> gram(ec * ec, 0.0);
    for (std::size_t i = 0; i < ec; i++) {
        for (std::size_t j = i; j < ec; j++) {
            double acc = 0;
            for (std::size_t k = 0; k < er; k++) {
                acc += emb[k * ec + i] * emb[k * ec + j];
            }
            gram[i * ec + j] = acc;
            gram[j * ec + i] = acc;
        }
    }
    auto eig = jacobi_eigen_symmetric(std::move(gram), ec);
    const double lmax = *std::max_element(eig.values.begin(), eig.values.end());
    const double cutoff = 1e-12 * lmax;

    // (E^T E)^+ as V diag(1/lambda) V^T, then times E^T.
    std::vector<double> gram_pinv(ec * ec, 0.0);
    for (std::size_t k = 0; k < ec; k++) {
        const double lambda = eig.values[k];
        if (lambda <= cutoff) {
            continue;
        }
        for (std::size_t i = 0; i < ec; i++) {
            const double vi = eig.vectors[i * ec + k] / lambda;
            for (std::size_t j = 0; j < ec; j++) {
                gram_pinv[i * ec + j] += vi * eig.vectors[j * ec + k];
            }
        }
    }
    ComplexMatrix out(c, r);
    for (std::size_t i = 0; i < c; i++) {
        for (std::size_t j = 0; j < r; j++) {
            // Real part from the top-left block, imaginary part from bottom-left.
            double re = 0;
            double im = 0;
            for (std::size_t k = 0; k < ec; k++) {
                re += gram_pinv[i * ec + k] * emb[j * ec + k];
                im += gram_pinv[(c + i) * ec + k] * emb[j * ec + k];
            }
            out(i, j) = Complex(re, im);
        }
    }
    return out;
}

double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix d = a - b;
    // Symmetrize away rounding noise before the Hermitian check.
    ComplexMatrix h = (d + d.adjoint()) * Complex(0.5);
    double acc = 0;
    for (double lambda : eig_hermitian(h)) {
        acc += std::abs(lambda);
    }
    return 0.5 * acc;
}

namespace pauli {
ComplexMatrix I() {
    return {{1, 0}, {0, 1}};
}
ComplexMatrix X() {
    return {{0, 1}, {1, 0}};
}
ComplexMatrix Y() {
    return {{0, Complex(0, -1)}, {Complex(0, 1), 0}};
}
ComplexMatrix Z() {
    return {{1, 0}, {0, -1}};
}
}  // namespace pauli

}  // namespace oqs
