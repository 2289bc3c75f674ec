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

#include "detqm/selector.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "detqm/errors.h"
#include "detqm/simd/kernels.h"

namespace detqm {

namespace {

void require_dim(const CompositeObservable& c, size_t dim) {
    if (dim != c.dim()) {
        throw DimensionMismatch("state has dimension " + std::to_string(dim) + ", observable has " +
                                std::to_string(c.dim()));
    }
}

void require_basis_dim(const SelectorBasis& basis, size_t dim) {
    if (basis.dim() != dim) {
        throw DimensionMismatch("selector basis has dimension " + std::to_string(basis.dim()) + ", state has " +
                                std::to_string(dim));
    }
}

void project(const ComplexMatrix& p, std::span<const Complex> psi, ComplexVector& out) {
    const auto& k = simd::kernels();
    out.resize(p.rows());
    for (size_t r = 0; r < p.rows(); ++r) {
        out[r] = k.dotu(p.row(r).data(), psi.data(), psi.size());
    }
}

// <psi, P psi> with the imaginary-part guard.
double born_probability(std::span<const Complex> psi, std::span<const Complex> projected) {
    const Complex p = simd::dotc(psi, projected);
    if (std::abs(p.imag()) > 1e-10) {
        throw ModelError("probability has imaginary part " + std::to_string(p.imag()) +
                         "; the joint projector is not Hermitian");
    }
    return p.real();
}

// The interval table over indices into c.support().
struct Table {
    std::vector<size_t> terms;
    std::vector<double> probs;
    std::vector<double> boundaries;
};

Table distribution_table(const CompositeObservable& c, std::span<const Complex> psi, double zero_tol) {
    require_dim(c, psi.size());
    const auto support = c.support();
    Table t;
    ComplexVector projected;
    double total = 0;
    for (size_t i = 0; i < support.size(); ++i) {
        project(support[i].projector, psi, projected);
        const double p = born_probability(psi, projected);
        total += p;
        if (p > zero_tol) {
            t.terms.push_back(i);
            t.probs.push_back(p);
        }
    }
    if (std::abs(total - 1.0) > 1e-9 || t.terms.empty()) {
        throw ModelError("outcome probabilities sum to " + std::to_string(total) + " instead of 1");
    }

    const auto lex_less = [&](size_t a, size_t b) { return support[a].outcome < support[b].outcome; };
    if (!std::is_sorted(t.terms.begin(), t.terms.end(), lex_less)) {
        std::vector<size_t> order(t.terms.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) { return lex_less(t.terms[a], t.terms[b]); });
        Table sorted;
        for (size_t i : order) {
            sorted.terms.push_back(t.terms[i]);
            sorted.probs.push_back(t.probs[i]);
        }
        t = std::move(sorted);
    }

    t.boundaries.resize(t.probs.size() + 1);
    t.boundaries[0] = 0.0;
    for (size_t i = 0; i < t.probs.size(); ++i) {
        t.boundaries[i + 1] = std::min(t.boundaries[i] + t.probs[i], 1.0);
    }
    t.boundaries.back() = 1.0;
    return t;
}

size_t locate(const std::vector<double>& boundaries, double xi) {
    if (!(xi >= 0.0 && xi < 1.0)) {
        throw std::invalid_argument("rho expects a value in [0, 1)");
    }
    const auto it = std::upper_bound(boundaries.begin() + 1, boundaries.end(), xi);
    return static_cast<size_t>(it - (boundaries.begin() + 1));
}

// Index into c.support() of the outcome mu selects.
size_t select_term(const CompositeObservable& c, const StateVector& psi, const SelectorBasis& basis) {
    require_basis_dim(basis, psi.dim());
    const Table t = distribution_table(c, psi.amplitudes(), kZeroProbabilityTol);
    return t.terms[locate(t.boundaries, tau_inverse(theta(basis, psi)))];
}

MeasurementRecord collapse_term(const CompositeObservable& c, const StateVector& psi, size_t term,
                                const PhaseClock& clock, int64_t tick, const SelectorBasis& basis) {
    const CompositeObservable::JointTerm& joint = c.support()[term];
    ComplexVector projected;
    project(joint.projector, psi.amplitudes(), projected);
    const double p = born_probability(psi.amplitudes(), projected);
    if (!(p > kZeroProbabilityTol)) {
        throw VanishingProjection("vanishing projection: outcome has probability " + std::to_string(p));
    }
    const StateVector raw = normalize(projected, tick);
    const Complex omega = clock.phase(tick) * std::conj(theta(basis, raw));
    return {joint.outcome, tick, raw.rephased(omega, tick), p};
}

}  // namespace

SelectorBasis SelectorBasis::standard(size_t dim) {
    if (dim == 0) {
        throw std::invalid_argument("basis dimension must be positive");
    }
    SelectorBasis b;
    b.dim_ = dim;
    b.id_ = "standard";
    return b;
}

SelectorBasis SelectorBasis::custom(std::vector<ComplexVector> vectors, std::string id) {
    const size_t dim = vectors.size();
    if (dim == 0) {
        throw std::invalid_argument("basis must not be empty");
    }
    for (const ComplexVector& v : vectors) {
        if (v.size() != dim) {
            throw std::invalid_argument("basis vectors must have length equal to their count");
        }
    }
    for (size_t i = 0; i < dim; ++i) {
        for (size_t j = i; j < dim; ++j) {
            const Complex g = inner_product(vectors[i], vectors[j]);
            if (std::abs(g - Complex(i == j ? 1.0 : 0.0)) > 1e-10) {
                throw std::invalid_argument("basis is not orthonormal at (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ")");
            }
        }
    }
    SelectorBasis b;
    b.dim_ = dim;
    b.vectors_ = std::move(vectors);
    b.id_ = std::move(id);
    return b;
}

ComplexVector SelectorBasis::coefficients(std::span<const Complex> psi) const {
    if (psi.size() != dim_) {
        throw DimensionMismatch("selector basis has dimension " + std::to_string(dim_) + ", state has " +
                                std::to_string(psi.size()));
    }
    if (is_standard()) {
        return ComplexVector(psi.begin(), psi.end());
    }
    ComplexVector c(dim_);
    for (size_t i = 0; i < dim_; ++i) {
        c[i] = simd::dotc(vectors_[i], psi);
    }
    return c;
}

ThetaSelection theta_selection(const SelectorBasis& basis, std::span<const Complex> psi) {
    const ComplexVector c = basis.coefficients(psi);
    ThetaSelection s;
    double partial = 0;
    s.k = c.size();
    for (size_t i = 0; i < c.size(); ++i) {
        partial += std::norm(c[i]);
        if (partial > 0.5 + kThetaTieTol) {
            s.k = i + 1;
            break;
        }
    }
    double largest = 0;
    for (size_t i = 0; i < s.k; ++i) {
        largest = std::max(largest, std::norm(c[i]));
    }
    for (size_t i = 0; i < s.k; ++i) {
        if (std::norm(c[i]) >= largest - kThetaTieTol) {
            s.index = i;
            break;
        }
    }
    s.z = c[s.index];
    s.theta = s.z / std::abs(s.z);
    return s;
}

Complex theta(const SelectorBasis& basis, const StateVector& psi) {
    return theta_selection(basis, psi.amplitudes()).theta;
}

OutcomeDistribution joint_distribution(const CompositeObservable& c, const StateVector& psi, double zero_tol) {
    Table t = distribution_table(c, psi.amplitudes(), zero_tol);
    OutcomeDistribution d;
    d.outcomes.reserve(t.terms.size());
    for (size_t term : t.terms) {
        d.outcomes.push_back(c.support()[term].outcome);
    }
    d.probs = std::move(t.probs);
    d.boundaries = std::move(t.boundaries);
    return d;
}

const Outcome& rho(const OutcomeDistribution& dist, double xi) { return dist.outcomes[locate(dist.boundaries, xi)]; }

Outcome mu(const CompositeObservable& c, const StateVector& psi, const SelectorBasis& basis) {
    return c.support()[select_term(c, psi, basis)].outcome;
}

MeasurementRecord collapse(const CompositeObservable& c, const StateVector& psi, std::span<const double> outcome,
                           const PhaseClock& clock, int64_t tick, const SelectorBasis& basis) {
    require_dim(c, psi.dim());
    require_basis_dim(basis, psi.dim());
    if (outcome.size() != c.size()) {
        throw std::invalid_argument("outcome has " + std::to_string(outcome.size()) + " values for " +
                                    std::to_string(c.size()) + " observables");
    }
    Outcome exact(outcome.size());
    for (size_t i = 0; i < outcome.size(); ++i) {
        const auto idx = c.part(i).index_of(outcome[i]);
        if (!idx) {
            throw std::invalid_argument("value " + std::to_string(outcome[i]) +
                                        " is not in the spectrum of observable " + std::to_string(i));
        }
        exact[i] = c.part(i).spectrum()[*idx];
    }
    const auto support = c.support();
    for (size_t term = 0; term < support.size(); ++term) {
        if (support[term].outcome == exact) {
            return collapse_term(c, psi, term, clock, tick, basis);
        }
    }
    throw VanishingProjection("vanishing projection: the joint projector of this outcome is zero");
}

StateVector birth_phase(std::span<const Complex> raw, const PhaseClock& clock, int64_t tick,
                        const SelectorBasis& basis) {
    require_basis_dim(basis, raw.size());
    const StateVector unit = normalize(raw, tick);
    const Complex omega = clock.phase(tick) * std::conj(theta(basis, unit));
    return unit.rephased(omega, tick);
}

std::vector<MeasurementRecord> measure_sequence(const CompositeObservable& c, const StateVector& psi,
                                                const PhaseClock& clock, int64_t start_tick, size_t n,
                                                const SelectorBasis& basis, SequenceMode mode) {
    if (n == 0) {
        throw std::invalid_argument("a measurement sequence needs at least one step");
    }
    require_dim(c, psi.dim());
    require_basis_dim(basis, psi.dim());
    std::vector<MeasurementRecord> records;
    records.reserve(n);
    StateVector current = psi;
    for (size_t step = 0; step < n; ++step) {
        const int64_t tick = start_tick + static_cast<int64_t>(step);
        if (mode == SequenceMode::kRebirth) {
            current = birth_phase(psi.amplitudes(), clock, tick, basis);
        }
        const size_t term = select_term(c, current, basis);
        records.push_back(collapse_term(c, current, term, clock, tick, basis));
        if (mode == SequenceMode::kSequential) {
            current = records.back().collapsed;
        }
    }
    return records;
}

}  // namespace detqm
