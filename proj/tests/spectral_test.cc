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

#include "detqm/spectral.h"

#include <gtest/gtest.h>

#include <cmath>

#include "detqm/epr.h"
#include "detqm/errors.h"
#include "test_support.h"

using namespace detqm;

namespace {

const Complex I(0, 1);

double rank(const ComplexMatrix& p) { return p.trace().real(); }

}  // namespace

TEST(SpectralDecompose, half_sigma_z) {
    const Observable o = spectral_decompose(ComplexMatrix::from_rows({{0.5, 0}, {0, -0.5}}));
    ASSERT_EQ(o.spectrum().size(), 2u);
    EXPECT_EQ(o.spectrum()[0], -0.5);
    EXPECT_EQ(o.spectrum()[1], 0.5);
    const Complex lower[] = {0, 1}, upper[] = {1, 0};
    EXPECT_LE(max_abs_diff(o.projectors()[0], ComplexMatrix::diagonal(lower)), 1e-15);
    EXPECT_LE(max_abs_diff(o.projectors()[1], ComplexMatrix::diagonal(upper)), 1e-15);
}

TEST(SpectralDecompose, total_spin_squared_has_singlet_and_triplet) {
    const Observable o = spectral_decompose(epr::spin_operators().S2);
    ASSERT_EQ(o.spectrum().size(), 2u);
    EXPECT_NEAR(o.spectrum()[0], 0.0, 1e-12);
    EXPECT_NEAR(o.spectrum()[1], 2.0, 1e-12);
    EXPECT_NEAR(rank(o.projectors()[0]), 1.0, 1e-10);
    EXPECT_NEAR(rank(o.projectors()[1]), 3.0, 1e-10);
    EXPECT_LE(spectral_defects(o).worst(), 1e-10);
}

TEST(SpectralDecompose, identity_is_one_spectrum_point) {
    const Observable o = spectral_decompose(ComplexMatrix::identity(4));
    ASSERT_EQ(o.spectrum().size(), 1u);
    EXPECT_EQ(o.spectrum()[0], 1.0);
    EXPECT_LE(max_abs_diff(o.projectors()[0], ComplexMatrix::identity(4)), 1e-15);
}

TEST(SpectralDecompose, errors) {
    EXPECT_THROW(spectral_decompose(ComplexMatrix::from_rows({{0, 1}, {0, 0}})), ModelError);
    EXPECT_THROW(spectral_decompose(ComplexMatrix(2, 3)), DimensionMismatch);
    EXPECT_THROW(spectral_decompose(ComplexMatrix::identity(2), 0.0), std::invalid_argument);
    const double wrong[] = {7.0};
    EXPECT_THROW(spectral_decompose(ComplexMatrix::identity(2), 1e-8, wrong), ModelError);
}

TEST(SpectralDecompose, clustering_merges_eigenvalues_within_tolerance) {
    const Complex d[] = {1.0, 1.0 + 1e-10, 3.0};
    const Observable merged = spectral_decompose(ComplexMatrix::diagonal(d), 1e-8);
    ASSERT_EQ(merged.spectrum().size(), 2u);
    EXPECT_NEAR(merged.spectrum()[0], 1.0 + 0.5e-10, 1e-15);
    EXPECT_NEAR(rank(merged.projectors()[0]), 2.0, 1e-12);

    const Observable split = spectral_decompose(ComplexMatrix::diagonal(d), 1e-11);
    EXPECT_EQ(split.spectrum().size(), 3u);
}

TEST(SpectralDecompose, exact_values_replace_cluster_means) {
    const double exact[] = {-0.5, 0.5};
    const ComplexMatrix sx = ComplexMatrix::from_rows({{0, 0.5}, {0.5, 0}});
    const Observable o = spectral_decompose(sx, kDefaultDegeneracyTol, exact);
    EXPECT_EQ(o.spectrum()[0], -0.5);
    EXPECT_EQ(o.spectrum()[1], 0.5);
    EXPECT_TRUE(o.index_of(0.5).has_value());
    EXPECT_FALSE(o.index_of(0.25).has_value());
}

TEST(SpectralDecompose, random_hermitian_invariants) {
    auto rng = gen::test_rng(20);
    for (int t = 0; t < 1000; ++t) {
        const size_t dim = 1 + t % 8;
        const ComplexMatrix m = (t % 2 == 0) ? gen::random_hermitian(dim, rng)
                                             : gen::matrix_with_spectrum(gen::random_unitary_columns(dim, rng),
                                                                             gen::random_degenerate_values(dim, rng));
        const Observable o = spectral_decompose(m);
        const SpectralDefects d = spectral_defects(o);
        ASSERT_LE(d.reconstruction, 1e-10) << "case " << t;
        ASSERT_LE(d.idempotence, 1e-10) << "case " << t;
        ASSERT_LE(d.hermiticity, 1e-10) << "case " << t;
        ASSERT_LE(d.orthogonality, 1e-10) << "case " << t;
        ASSERT_LE(d.completeness, 1e-10) << "case " << t;
        for (size_t i = 1; i < o.spectrum().size(); ++i) {
            ASSERT_LT(o.spectrum()[i - 1], o.spectrum()[i]);
        }
    }
}

TEST(SpectralDecompose, degenerate_spectrum_recovers_multiplicities) {
    auto rng = gen::test_rng(21);
    for (int t = 0; t < 200; ++t) {
        const size_t dim = 2 + t % 7;
        const auto values = gen::random_degenerate_values(dim, rng);
        const Observable o =
            spectral_decompose(gen::matrix_with_spectrum(gen::random_unitary_columns(dim, rng), values));
        for (size_t k = 0; k < o.spectrum().size(); ++k) {
            const double v = o.spectrum()[k];
            const auto mult = std::count_if(values.begin(), values.end(), [&](double x) { return std::abs(x - v) < 1e-8; });
            EXPECT_NEAR(rank(o.projectors()[k]), static_cast<double>(mult), 1e-9);
        }
    }
}

TEST(Compose, spin_components_of_two_particles) {
    const auto& s = epr::spin_operators();
    const double half[] = {-0.5, 0.5};
    const CompositeObservable c =
        compose({spectral_decompose(s.sx1, kDefaultDegeneracyTol, half), spectral_decompose(s.sx2, kDefaultDegeneracyTol, half)});
    const std::vector<Outcome> space = c.outcome_space();
    ASSERT_EQ(space.size(), 4u);
    EXPECT_EQ(space[0], (Outcome{-0.5, -0.5}));
    EXPECT_EQ(space[1], (Outcome{-0.5, 0.5}));
    EXPECT_EQ(space[2], (Outcome{0.5, -0.5}));
    EXPECT_EQ(space[3], (Outcome{0.5, 0.5}));
    EXPECT_EQ(c.support().size(), 4u);
}

TEST(Compose, non_commuting_pair_is_rejected_with_details) {
    const ComplexMatrix sx = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
    const ComplexMatrix sy = ComplexMatrix::from_rows({{0, -I}, {I, 0}});
    try {
        compose({spectral_decompose(sx), spectral_decompose(sy)});
        FAIL() << "expected NonCommutingError";
    } catch (const NonCommutingError& e) {
        EXPECT_EQ(e.first_part(), 0u);
        EXPECT_EQ(e.second_part(), 1u);
        EXPECT_NEAR(e.commutator_norm(), 0.5, 1e-12);
    }
}

TEST(Compose, dimension_and_empty_errors) {
    EXPECT_THROW(compose({}), std::invalid_argument);
    EXPECT_THROW(compose({spectral_decompose(ComplexMatrix::identity(2)), spectral_decompose(ComplexMatrix::identity(3))}),
                 DimensionMismatch);
}

TEST(JointProjector, self_composition) {
    auto rng = gen::test_rng(22);
    const ComplexMatrix a = gen::matrix_with_spectrum(gen::random_unitary_columns(3, rng), {1.0, 2.0, 2.0});
    const Observable o = spectral_decompose(a);
    const CompositeObservable c = compose({o, o});
    const double same[] = {2.0, 2.0}, mixed[] = {1.0, 2.0};
    EXPECT_LE(max_abs_diff(joint_projector(c, same), o.projectors()[1]), 1e-12);
    EXPECT_LE(max_abs(joint_projector(c, mixed)), 1e-12);
    EXPECT_EQ(c.support().size(), 2u);
}

TEST(JointProjector, up_down_at_zero_angles) {
    const auto& s = epr::spin_operators();
    const double half[] = {-0.5, 0.5};
    const CompositeObservable c =
        compose({spectral_decompose(s.sz1, kDefaultDegeneracyTol, half), spectral_decompose(s.sz2, kDefaultDegeneracyTol, half)});
    const double up_down[] = {0.5, -0.5};
    // |ud> is the second standard basis vector of C^2 (x) C^2.
    const Complex d[] = {0, 1, 0, 0};
    EXPECT_LE(max_abs_diff(joint_projector(c, up_down), ComplexMatrix::diagonal(d)), 1e-15);
}

TEST(JointProjector, rejects_bad_outcomes) {
    const Observable o = spectral_decompose(ComplexMatrix::identity(2));
    const CompositeObservable c = compose({o});
    const double wrong_len[] = {1.0, 1.0}, not_in_spectrum[] = {3.0};
    EXPECT_THROW(joint_projector(c, wrong_len), std::invalid_argument);
    EXPECT_THROW(joint_projector(c, not_in_spectrum), std::invalid_argument);
}

TEST(JointProjector, projector_properties_and_completeness) {
    auto rng = gen::test_rng(23);
    for (int t = 0; t < 200; ++t) {
        const size_t dim = 2 + t % 7;
        const auto pair = gen::random_commuting_pair(dim, rng);
        const CompositeObservable c = compose({spectral_decompose(pair.a), spectral_decompose(pair.b)});
        ComplexMatrix total(dim, dim);
        for (const Outcome& x : c.outcome_space()) {
            const ComplexMatrix p = joint_projector(c, x);
            ASSERT_LE(max_abs_diff(p * p, p), 1e-10);
            ASSERT_LE(max_abs_diff(p.adjoint(), p), 1e-10);
            total += p;
        }
        ASSERT_LE(max_abs_diff(total, ComplexMatrix::identity(dim)), 1e-9);
    }
}
