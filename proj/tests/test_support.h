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

#ifndef DETQM_TESTS_TEST_SUPPORT_H
#define DETQM_TESTS_TEST_SUPPORT_H

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "detqm/linalg.h"
#include "detqm/spectral.h"

namespace detqm::gen {

/// Every randomized test draws from a fixed seed; salt separates streams.
inline std::mt19937_64 test_rng(uint64_t salt = 0) { return std::mt19937_64(0x5eed0000u + salt); }

inline Complex gaussian_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    return {re, n(rng)};
}

inline ComplexVector gaussian_vector(size_t dim, std::mt19937_64& rng) {
    ComplexVector v(dim);
    for (Complex& z : v) z = gaussian_complex(rng);
    return v;
}

/// Unit vector, uniformly distributed on the sphere.
inline ComplexVector random_unit_vector(size_t dim, std::mt19937_64& rng) {
    ComplexVector v = gaussian_vector(dim, rng);
    double s = 0;
    for (Complex z : v) s += std::norm(z);
    s = std::sqrt(s);
    for (Complex& z : v) z /= s;
    return v;
}

inline Complex random_phase(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    return std::polar(1.0, u(rng));
}

/// Columns of a random unitary, orthonormalized by modified Gram-Schmidt
/// (run twice for stability). Independent of the eigensolver under test.
inline std::vector<ComplexVector> random_unitary_columns(size_t dim, std::mt19937_64& rng) {
    std::vector<ComplexVector> cols;
    for (size_t k = 0; k < dim; ++k) {
        ComplexVector v = gaussian_vector(dim, rng);
        for (int pass = 0; pass < 2; ++pass) {
            for (const ComplexVector& q : cols) {
                Complex d = 0;
                for (size_t i = 0; i < dim; ++i) d += std::conj(q[i]) * v[i];
                for (size_t i = 0; i < dim; ++i) v[i] -= d * q[i];
            }
        }
        double s = 0;
        for (Complex z : v) s += std::norm(z);
        s = std::sqrt(s);
        for (Complex& z : v) z /= s;
        cols.push_back(std::move(v));
    }
    return cols;
}

/// sum_k values[k] |u_k><u_k|
inline ComplexMatrix matrix_with_spectrum(const std::vector<ComplexVector>& u, const std::vector<double>& values) {
    const size_t dim = u.size();
    ComplexMatrix m(dim, dim);
    for (size_t k = 0; k < dim; ++k) {
        for (size_t r = 0; r < dim; ++r) {
            for (size_t c = 0; c < dim; ++c) {
                m.at(r, c) += values[k] * u[k][r] * std::conj(u[k][c]);
            }
        }
    }
    // Exact Hermitian symmetry.
    for (size_t r = 0; r < dim; ++r) {
        m.at(r, r) = m(r, r).real();
        for (size_t c = r + 1; c < dim; ++c) m.at(c, r) = std::conj(m(r, c));
    }
    return m;
}

/// (G + G^dagger) / 2 with Gaussian G: generic, nondegenerate spectrum.
inline ComplexMatrix random_hermitian(size_t dim, std::mt19937_64& rng) {
    ComplexMatrix m(dim, dim);
    for (size_t r = 0; r < dim; ++r) {
        std::normal_distribution<double> n(0.0, 1.0);
        m.at(r, r) = n(rng);
        for (size_t c = r + 1; c < dim; ++c) {
            m.at(r, c) = gaussian_complex(rng);
            m.at(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

/// Random eigenvalues drawn from a small integer set, so degeneracy is common.
inline std::vector<double> random_degenerate_values(size_t dim, std::mt19937_64& rng) {
    static constexpr double kPool[] = {-1.0, 0.0, 1.0, 2.0};
    std::uniform_int_distribution<int> pick(0, 3);
    std::vector<double> v(dim);
    for (double& x : v) x = kPool[pick(rng)];
    return v;
}

/// Two observables diagonal in one random eigenbasis: they commute, and
/// their joint outcomes are fixed by the shared eigenvectors.
struct CommutingPair {
    std::vector<ComplexVector> basis;
    std::vector<double> a_values;
    std::vector<double> b_values;
    ComplexMatrix a;
    ComplexMatrix b;
};

inline CommutingPair random_commuting_pair(size_t dim, std::mt19937_64& rng) {
    CommutingPair p;
    p.basis = random_unitary_columns(dim, rng);
    p.a_values = random_degenerate_values(dim, rng);
    p.b_values = random_degenerate_values(dim, rng);
    p.a = matrix_with_spectrum(p.basis, p.a_values);
    p.b = matrix_with_spectrum(p.basis, p.b_values);
    return p;
}

inline constexpr double kSmallIntegers[] = {-1.0, 0.0, 1.0, 2.0};

inline double max_entry_diff(std::span<const Complex> x, std::span<const Complex> y) {
    double d = 0;
    for (size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
    return d;
}

}  // namespace detqm::gen

#endif  // DETQM_TESTS_TEST_SUPPORT_H
