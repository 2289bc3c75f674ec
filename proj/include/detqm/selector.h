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

#ifndef DETQM_SELECTOR_H
#define DETQM_SELECTOR_H

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "detqm/linalg.h"
#include "detqm/randomness.h"
#include "detqm/spectral.h"

namespace detqm {

/// Outcomes with probability at or below this are dropped from the interval map.
inline constexpr double kZeroProbabilityTol = 1e-12;

/// Partial sums of |<phi_i, psi>|^2 must exceed 1/2 by more than this, and
/// coefficient moduli squared within this of the maximum count as ties.
/// Re-phasing perturbs moduli at roundoff level; the band keeps the phase
/// extraction equivariant on states with exactly degenerate moduli.
inline constexpr double kThetaTieTol = 1e-12;

/// The step map from [0, 1) onto the nonzero-probability outcomes:
/// outcome i owns [boundaries[i], boundaries[i + 1]).
struct OutcomeDistribution {
    std::vector<Outcome> outcomes;   // lexicographic, numeric ascending per component
    std::vector<double> probs;
    std::vector<double> boundaries;  // size() + 1 entries, front 0, back exactly 1

    size_t size() const { return outcomes.size(); }
    std::pair<double, double> interval(size_t i) const { return {boundaries[i], boundaries[i + 1]}; }
};

/// The orthonormal basis the phase is read against.
class SelectorBasis {
  public:
    static SelectorBasis standard(size_t dim);
    /// Throws std::invalid_argument unless the vectors form an orthonormal
    /// basis within 1e-10.
    static SelectorBasis custom(std::vector<ComplexVector> vectors, std::string id);

    size_t dim() const { return dim_; }
    bool is_standard() const { return vectors_.empty(); }
    const std::string& id() const { return id_; }
    /// Empty for the standard basis.
    std::span<const ComplexVector> vectors() const { return vectors_; }

    /// c_i = <phi_i, psi>
    ComplexVector coefficients(std::span<const Complex> psi) const;

  private:
    size_t dim_ = 0;
    std::vector<ComplexVector> vectors_;
    std::string id_;
};

/// Intermediate values of the phase extraction, for inspection and tests.
struct ThetaSelection {
    size_t k = 0;      // number of leading coefficients whose weight first exceeds 1/2
    size_t index = 0;  // zero-based index of the selected coefficient
    Complex z;         // the selected coefficient
    Complex theta;     // z / |z|
};

ThetaSelection theta_selection(const SelectorBasis& basis, std::span<const Complex> psi);
/// The equivariant phase: theta(omega psi) = omega theta(psi).
Complex theta(const SelectorBasis& basis, const StateVector& psi);

struct MeasurementRecord {
    Outcome outcome;
    int64_t tick = 0;
    StateVector collapsed;  // re-phased so that theta(collapsed) = clock.phase(tick)
    double probability = 0;
};

/// Born probabilities of every joint outcome, zero outcomes dropped.
/// Throws DimensionMismatch, or ModelError when a probability has an
/// imaginary part above 1e-10 or the total misses 1 by more than 1e-9.
OutcomeDistribution joint_distribution(const CompositeObservable& c, const StateVector& psi,
                                       double zero_tol = kZeroProbabilityTol);

/// The outcome whose interval contains xi. Requires 0 <= xi < 1.
const Outcome& rho(const OutcomeDistribution& dist, double xi);

/// rho(joint_distribution(c, psi), tau_inverse(theta(basis, psi)))
Outcome mu(const CompositeObservable& c, const StateVector& psi, const SelectorBasis& basis);

/// Projects psi onto the outcome, normalizes, and re-phases to the clock at
/// tick. Throws VanishingProjection when the outcome has zero probability.
MeasurementRecord collapse(const CompositeObservable& c, const StateVector& psi, std::span<const double> outcome,
                           const PhaseClock& clock, int64_t tick, const SelectorBasis& basis);

/// Normalizes raw and sets its phase so that theta(result) = clock.phase(tick).
StateVector birth_phase(std::span<const Complex> raw, const PhaseClock& clock, int64_t tick,
                        const SelectorBasis& basis);

enum class SequenceMode {
    kRebirth,     // every step measures a freshly born copy of the initial state
    kSequential,  // every step measures the collapsed state of the previous one
};

/// n measurements at ticks start_tick, start_tick + 1, ...
std::vector<MeasurementRecord> measure_sequence(const CompositeObservable& c, const StateVector& psi,
                                                const PhaseClock& clock, int64_t start_tick, size_t n,
                                                const SelectorBasis& basis, SequenceMode mode);

}  // namespace detqm

#endif  // DETQM_SELECTOR_H
