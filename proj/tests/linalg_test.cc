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

#include <gtest/gtest.h>

#include <cmath>

#include "detqm/errors.h"
#include "test_support.h"

using namespace detqm;

namespace {

const Complex I(0, 1);

ComplexVector e(size_t dim, size_t k) {
    ComplexVector v(dim);
    v[k] = 1;
    return v;
}

ComplexMatrix sigma_x() { return ComplexMatrix::from_rows({{0, 1}, {1, 0}}); }
ComplexMatrix sigma_z() { return ComplexMatrix::from_rows({{1, 0}, {0, -1}}); }

}  // namespace

TEST(ComplexMatrix, rejects_wrong_entry_count_and_non_finite_entries) {
    EXPECT_THROW(ComplexMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
    EXPECT_THROW(ComplexMatrix(1, 2, {1, Complex(NAN, 0)}), std::invalid_argument);
    EXPECT_THROW(ComplexMatrix(1, 1, {Complex(0, INFINITY)}), std::invalid_argument);
    EXPECT_NO_THROW(ComplexMatrix(1, 2, {1, 2}));
}

TEST(ComplexMatrix, product_adjoint_trace) {
    const ComplexMatrix a = ComplexMatrix::from_rows({{1, I}, {2, 3}});
    const ComplexMatrix b = ComplexMatrix::from_rows({{0, 1}, {I, -1}});
    const ComplexMatrix ab = a * b;
    EXPECT_EQ(ab(0, 0), I * I);
    EXPECT_EQ(ab(0, 1), 1.0 - I);
    EXPECT_EQ(ab(1, 0), 3.0 * I);
    EXPECT_EQ(ab(1, 1), -1.0);
    EXPECT_EQ(a.adjoint()(0, 1), 2.0);
    EXPECT_EQ(a.adjoint()(1, 0), -I);
    EXPECT_EQ(a.trace(), 4.0);
    EXPECT_THROW(a * ComplexMatrix(3, 3), DimensionMismatch);
}

TEST(InnerProduct, orthonormal_basis_and_conjugate_linearity) {
    EXPECT_EQ(inner_product(e(2, 0), e(2, 0)), 1.0);
    EXPECT_EQ(inner_product(e(2, 0), e(2, 1)), 0.0);
    ComplexVector ie1 = e(2, 0);
    ie1[0] *= I;
    EXPECT_EQ(inner_product(ie1, e(2, 0)), -I);
    EXPECT_THROW(inner_product(e(2, 0), e(3, 0)), DimensionMismatch);
}

TEST(InnerProduct, hermitian_symmetry_property) {
    auto rng = gen::test_rng(1);
    for (int t = 0; t < 500; ++t) {
        const size_t dim = 1 + t % 9;
        const ComplexVector x = gen::gaussian_vector(dim, rng);
        const ComplexVector y = gen::gaussian_vector(dim, rng);
        EXPECT_LE(std::abs(inner_product(x, y) - std::conj(inner_product(y, x))), 1e-12);
    }
}

TEST(TensorProduct, examples) {
    EXPECT_EQ(tensor_product(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));

    const Complex d[] = {1, 1, -1, -1};
    EXPECT_EQ(tensor_product(sigma_z(), ComplexMatrix::identity(2)), ComplexMatrix::diagonal(d));

    const ComplexMatrix xx = tensor_product(sigma_x(), sigma_x());
    for (size_t r = 0; r < 4; ++r) {
        for (size_t c = 0; c < 4; ++c) {
            EXPECT_EQ(xx(r, c), r + c == 3 ? 1.0 : 0.0) << r << "," << c;
        }
    }
}

TEST(TensorProduct, associative_on_integer_matrices) {
    auto rng = gen::test_rng(2);
    std::uniform_int_distribution<int> small(-3, 3);
    const auto random_int_matrix = [&](size_t rows, size_t cols) {
        ComplexMatrix m(rows, cols);
        for (size_t r = 0; r < rows; ++r)
            for (size_t c = 0; c < cols; ++c) m.at(r, c) = Complex(small(rng), small(rng));
        return m;
    };
    for (int t = 0; t < 50; ++t) {
        const ComplexMatrix a = random_int_matrix(1 + t % 2, 2);
        const ComplexMatrix b = random_int_matrix(2, 1 + t % 3);
        const ComplexMatrix c = random_int_matrix(3, 2);
        EXPECT_EQ(tensor_product(tensor_product(a, b), c), tensor_product(a, tensor_product(b, c)));
    }
}

TEST(Apply, examples) {
    const ComplexVector v = {Complex(1, 2), Complex(-3, 0.5)};
    EXPECT_EQ(detqm::apply(ComplexMatrix::identity(2), v), v);
    const Complex d[] = {2, 3};
    EXPECT_EQ(detqm::apply(ComplexMatrix::diagonal(d), ComplexVector{1, 1}), (ComplexVector{2, 3}));
    EXPECT_EQ(detqm::apply(sigma_x(), e(2, 0)), e(2, 1));
    EXPECT_THROW(detqm::apply(sigma_x(), e(3, 0)), DimensionMismatch);
}

TEST(Normalize, examples) {
    const StateVector a = normalize(ComplexVector{2, 0}, 5);
    EXPECT_EQ(a[0], 1.0);
    EXPECT_EQ(a[1], 0.0);
    EXPECT_EQ(a.birth_tick(), 5);

    EXPECT_THROW(normalize(ComplexVector{0, 0}, 0), VanishingProjection);

    const StateVector b = normalize(ComplexVector{1, I}, 0);
    EXPECT_NEAR(std::abs(b[0] - 1.0 / std::sqrt(2.0)), 0, 1e-15);
    EXPECT_NEAR(std::abs(b[1] - I / std::sqrt(2.0)), 0, 1e-15);
}

TEST(Normalize, unit_norm_property) {
    auto rng = gen::test_rng(3);
    std::uniform_real_distribution<double> log_scale(-10, 10);
    for (int t = 0; t < 1000; ++t) {
        ComplexVector v = gen::gaussian_vector(1 + t % 8, rng);
        const double s = std::pow(10.0, log_scale(rng));
        for (Complex& z : v) z *= s;
        EXPECT_NEAR(norm(normalize(v, 0).amplitudes()), 1.0, 1e-12);
    }
}

TEST(StateVector, from_unit_amplitudes_checks_invariants) {
    EXPECT_THROW(StateVector::from_unit_amplitudes({}, 0), std::invalid_argument);
    EXPECT_THROW(StateVector::from_unit_amplitudes({1, 1}, 0), std::invalid_argument);
    EXPECT_THROW(StateVector::from_unit_amplitudes({Complex(NAN, 0)}, 0), std::invalid_argument);
    const StateVector s = StateVector::from_unit_amplitudes({0, I}, 9);
    EXPECT_EQ(s.dim(), 2u);
    EXPECT_EQ(s.birth_tick(), 9);
}

TEST(StateVector, rephased_multiplies_every_amplitude) {
    const StateVector s = normalize(ComplexVector{1, I, -1}, 0);
    const StateVector r = s.rephased(I, 4);
    for (size_t i = 0; i < 3; ++i) EXPECT_EQ(r[i], I * s[i]);
    EXPECT_EQ(r.birth_tick(), 4);
    EXPECT_THROW(s.rephased(2.0, 0), std::invalid_argument);
}

TEST(Helpers, hermitian_and_commutator) {
    EXPECT_TRUE(is_hermitian(sigma_x(), 0));
    EXPECT_FALSE(is_hermitian(ComplexMatrix::from_rows({{0, 1}, {0, 0}}), 1e-10));
    const ComplexMatrix sy = ComplexMatrix::from_rows({{0, -I}, {I, 0}});
    // [sx, sy] = 2i sz
    EXPECT_EQ(max_abs_diff(commutator(sigma_x(), sy), 2.0 * I * sigma_z()), 0.0);
    const ComplexMatrix o = outer(e(2, 0), ComplexVector{0, I});
    EXPECT_EQ(o(0, 1), -I);
    EXPECT_EQ(max_abs(o), 1.0);
}
