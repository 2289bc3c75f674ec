// Copyright 2026 The detqm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "detqm/linalg.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "detqm/errors.h"
#include "detqm/simd/kernels.h"

namespace detqm {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
        throw std::invalid_argument("matrix needs " + std::to_string(rows * cols) + " entries, got " +
                                    std::to_string(entries_.size()));
    }
    for (const Complex& z : entries_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("matrix entries must be finite");
        }
    }
}

ComplexMatrix ComplexMatrix::identity(size_t n) {
    ComplexMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) {
        m.at(i, i) = 1;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
    ComplexMatrix m(values.size(), values.size());
    for (size_t i = 0; i < values.size(); ++i) {
        m.at(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const size_t r = rows.size();
    const size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<Complex> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) {
            throw std::invalid_argument("ragged matrix rows");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(r, c, std::move(entries));
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t c = 0; c < cols_; ++c) {
            out.at(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t c = 0; c < cols_; ++c) {
            out.at(c, r) = (*this)(r, c);
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0;
    for (size_t i = 0; i < std::min(rows_, cols_); ++i) {
        t += (*this)(i, i);
    }
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "matrix sum");
    for (size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] += other.entries_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "matrix difference");
    for (size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] -= other.entries_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (Complex& z : entries_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("matrix product: " + std::to_string(a.cols()) + " columns vs " +
                                std::to_string(b.rows()) + " rows");
    }
    const ComplexMatrix bt = b.transpose();
    ComplexMatrix out(a.rows(), b.cols());
    for (size_t r = 0; r < a.rows(); ++r) {
        for (size_t c = 0; c < b.cols(); ++c) {
            out.at(r, c) = simd::dotu(a.row(r), bt.row(c));
        }
    }
    return out;
}

double max_abs(const ComplexMatrix& m) {
    double best = 0;
    for (const Complex& z : m.entries()) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs(a - b); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return m.is_square() && max_abs_diff(m, m.adjoint()) <= tol;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
    ComplexMatrix out(u.size(), v.size());
    for (size_t r = 0; r < u.size(); ++r) {
        for (size_t c = 0; c < v.size(); ++c) {
            out.at(r, c) = u[r] * std::conj(v[c]);
        }
    }
    return out;
}

StateVector StateVector::from_unit_amplitudes(ComplexVector amplitudes, int64_t birth_tick) {
    if (amplitudes.empty()) {
        throw std::invalid_argument("state vector must have at least one amplitude");
    }
    for (const Complex& z : amplitudes) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("state amplitudes must be finite");
        }
    }
    const double n = norm(amplitudes);
    if (std::abs(n - 1.0) > 1e-12) {
        throw std::invalid_argument("state vector norm " + std::to_string(n) + " is not 1");
    }
    return StateVector(std::move(amplitudes), birth_tick);
}

StateVector StateVector::rephased(Complex omega, int64_t birth_tick) const {
    if (!(std::abs(std::abs(omega) - 1.0) <= 1e-12)) {
        throw std::invalid_argument("phase factor must have unit modulus");
    }
    ComplexVector out(amplitudes_.size());
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = omega * amplitudes_[i];
    }
    return StateVector(std::move(out), birth_tick);
}

Complex inner_product(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) {
        throw DimensionMismatch("inner product: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
    }
    return simd::dotc(x, y);
}

double norm(std::span<const Complex> v) { return std::sqrt(simd::dotc(v, v).real()); }

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t ar = 0; ar < a.rows(); ++ar) {
        for (size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex s = a(ar, ac);
            for (size_t br = 0; br < b.rows(); ++br) {
                for (size_t bc = 0; bc < b.cols(); ++bc) {
                    out.at(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

ComplexVector apply(const ComplexMatrix& m, std::span<const Complex> v) {
    if (m.cols() != v.size()) {
        throw DimensionMismatch("matrix-vector product: " + std::to_string(m.cols()) + " columns vs length " +
                                std::to_string(v.size()));
    }
    ComplexVector out(m.rows());
    const auto& k = simd::kernels();
    for (size_t r = 0; r < m.rows(); ++r) {
        out[r] = k.dotu(m.row(r).data(), v.data(), v.size());
    }
    return out;
}

StateVector normalize(std::span<const Complex> v, int64_t birth_tick) {
    const double n = norm(v);
    if (!(n > 1e-12)) {
        throw VanishingProjection("vanishing projection: cannot normalize a vector of norm " + std::to_string(n));
    }
    ComplexVector out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        out[i] = v[i] / n;
    }
    return StateVector(std::move(out), birth_tick);
}

}  // namespace detqm
