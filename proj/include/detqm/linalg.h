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

#ifndef DETQM_LINALG_H
#define DETQM_LINALG_H

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace detqm {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense row-major complex matrix. Sized for small Hilbert spaces (the
/// library targets dimensions up to 64), so there is no sparse storage.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    /// Zero matrix.
    ComplexMatrix(size_t rows, size_t cols);
    /// Throws std::invalid_argument when the entry count is wrong or an entry
    /// is not finite.
    ComplexMatrix(size_t rows, size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> values);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex operator()(size_t r, size_t c) const { return entries_[r * cols_ + c]; }
    Complex& at(size_t r, size_t c) { return entries_[r * cols_ + c]; }

    std::span<const Complex> row(size_t r) const { return {entries_.data() + r * cols_, cols_}; }
    std::span<const Complex> entries() const { return entries_; }

    /// Conjugate transpose.
    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    Complex trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    bool operator==(const ComplexMatrix&) const = default;

  private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Complex> entries_;
};

/// Largest entry modulus.
double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& m, double tol);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
/// u v^dagger
ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v);

/// A unit-norm amplitude list tagged with the tick at which it was created.
/// Only obtainable through normalize() or from_unit_amplitudes(), so the norm
/// invariant always holds.
class StateVector {
  public:
    /// Accepts amplitudes whose norm is 1 within 1e-12, as is.
    static StateVector from_unit_amplitudes(ComplexVector amplitudes, int64_t birth_tick);

    size_t dim() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    Complex operator[](size_t i) const { return amplitudes_[i]; }
    int64_t birth_tick() const { return birth_tick_; }

    /// omega * psi with the given birth tick; omega must have unit modulus.
    StateVector rephased(Complex omega, int64_t birth_tick) const;

    bool operator==(const StateVector&) const = default;

  private:
    StateVector(ComplexVector amplitudes, int64_t birth_tick)
        : amplitudes_(std::move(amplitudes)), birth_tick_(birth_tick) {}

    friend StateVector normalize(std::span<const Complex> v, int64_t birth_tick);

    ComplexVector amplitudes_;
    int64_t birth_tick_ = 0;
};

/// <x, y>, conjugate-linear in x. Throws DimensionMismatch.
Complex inner_product(std::span<const Complex> x, std::span<const Complex> y);
inline Complex inner_product(const StateVector& x, const StateVector& y) {
    return inner_product(x.amplitudes(), y.amplitudes());
}

double norm(std::span<const Complex> v);

/// Kronecker product.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// m * v. Throws DimensionMismatch.
ComplexVector apply(const ComplexMatrix& m, std::span<const Complex> v);

/// v / |v|. Throws VanishingProjection when |v| <= 1e-12.
StateVector normalize(std::span<const Complex> v, int64_t birth_tick);

}  // namespace detqm

#endif  // DETQM_LINALG_H
