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

#ifndef DETQM_SPECTRAL_H
#define DETQM_SPECTRAL_H

#include <optional>
#include <span>
#include <vector>

#include "detqm/linalg.h"

namespace detqm {

inline constexpr double kDefaultDegeneracyTol = 1e-8;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kCommutationTol = 1e-10;

/// One value per part of a composite observable.
using Outcome = std::vector<double>;

/// A Hermitian matrix together with its spectral representation
/// A = sum_a a P_a over a finite ascending spectrum.
class Observable {
  public:
    const ComplexMatrix& matrix() const { return matrix_; }
    size_t dim() const { return matrix_.rows(); }
    std::span<const double> spectrum() const { return spectrum_; }
    std::span<const ComplexMatrix> projectors() const { return projectors_; }

    /// Index of the spectrum point within tol of value.
    std::optional<size_t> index_of(double value, double tol = 1e-9) const;

  private:
    friend Observable spectral_decompose(const ComplexMatrix&, double, std::span<const double>);

    ComplexMatrix matrix_;
    std::vector<double> spectrum_;
    std::vector<ComplexMatrix> projectors_;
};

/// Worst-case violations of the spectral invariants, as max-entry moduli.
struct SpectralDefects {
    double reconstruction = 0;  // |A - sum a P_a|
    double idempotence = 0;     // |P^2 - P|
    double hermiticity = 0;     // |P^dagger - P|
    double orthogonality = 0;   // |P_a P_b|, a != b
    double completeness = 0;    // |sum P_a - 1|

    double worst() const;
};

SpectralDefects spectral_defects(const Observable& obs);

/// Eigendecomposition of a Hermitian matrix with eigenvalue clustering.
///
/// Sorted eigenvalues closer than degeneracy_tol to their neighbour share a
/// spectrum point whose value is the cluster mean; the projector is the sum
/// of outer products of the cluster's orthonormal eigenvectors. When
/// exact_values is non-empty, every cluster mean is replaced by the exact
/// value within degeneracy_tol of it, and a cluster with no such value is a
/// ModelError.
///
/// Throws ModelError for non-Hermitian input (tolerance 1e-10) or eigensolver
/// failure, and std::invalid_argument for a non-positive tolerance.
Observable spectral_decompose(const ComplexMatrix& m, double degeneracy_tol = kDefaultDegeneracyTol,
                              std::span<const double> exact_values = {});

/// An ordered list of mutually commuting observables on one Hilbert space.
class CompositeObservable {
  public:
    /// A joint outcome with its (nonzero) joint projector.
    struct JointTerm {
        Outcome outcome;
        ComplexMatrix projector;
    };

    size_t dim() const { return parts_.front().dim(); }
    size_t size() const { return parts_.size(); }
    std::span<const Observable> parts() const { return parts_; }
    const Observable& part(size_t i) const { return parts_[i]; }

    /// Every tuple of the product of the spectra, in lexicographic order.
    std::vector<Outcome> outcome_space() const;

    /// Outcomes whose joint projector has nonzero rank, lexicographic order,
    /// with the projectors precomputed. Outcomes left out here have
    /// probability zero in every state.
    std::span<const JointTerm> support() const { return support_; }

  private:
    friend CompositeObservable compose(std::vector<Observable> parts);

    std::vector<Observable> parts_;
    std::vector<JointTerm> support_;
};

/// Validates pairwise commutation of the projector families (1e-10 on the
/// max-entry modulus of P Q - Q P) and builds the composite. Throws
/// NonCommutingError naming the first offending pair, DimensionMismatch, or
/// std::invalid_argument for an empty list.
CompositeObservable compose(std::vector<Observable> parts);

/// Ordered product P^(1)_{x_1} ... P^(n)_{x_n}. Throws std::invalid_argument
/// when the tuple has the wrong length or a value is not in its spectrum.
ComplexMatrix joint_projector(const CompositeObservable& c, std::span<const double> outcome);

}  // namespace detqm

#endif  // DETQM_SPECTRAL_H
