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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "detqm/errors.h"

namespace detqm {

std::optional<size_t> Observable::index_of(double value, double tol) const {
    for (size_t i = 0; i < spectrum_.size(); ++i) {
        if (spectrum_[i] == value || std::abs(spectrum_[i] - value) <= tol) {
            return i;
        }
    }
    return std::nullopt;
}

double SpectralDefects::worst() const {
    return std::max({reconstruction, idempotence, hermiticity, orthogonality, completeness});
}

SpectralDefects spectral_defects(const Observable& obs) {
    SpectralDefects d;
    const size_t n = obs.dim();
    ComplexMatrix rebuilt(n, n);
    ComplexMatrix total(n, n);
    const auto projectors = obs.projectors();
    for (size_t i = 0; i < projectors.size(); ++i) {
        const ComplexMatrix& p = projectors[i];
        rebuilt += p * Complex(obs.spectrum()[i]);
        total += p;
        d.idempotence = std::max(d.idempotence, max_abs_diff(p * p, p));
        d.hermiticity = std::max(d.hermiticity, max_abs_diff(p.adjoint(), p));
        for (size_t j = i + 1; j < projectors.size(); ++j) {
            d.orthogonality = std::max(d.orthogonality, max_abs(p * projectors[j]));
        }
    }
    d.reconstruction = max_abs_diff(obs.matrix(), rebuilt);
    d.completeness = max_abs_diff(total, ComplexMatrix::identity(n));
    return d;
}

Observable spectral_decompose(const ComplexMatrix& m, double degeneracy_tol, std::span<const double> exact_values) {
    if (!(degeneracy_tol > 0)) {
        throw std::invalid_argument("degeneracy tolerance must be positive");
    }
    if (!m.is_square() || m.rows() == 0) {
        throw DimensionMismatch("observable matrix must be square and non-empty");
    }
    const double asymmetry = max_abs_diff(m, m.adjoint());
    if (asymmetry > kHermitianTol) {
        throw ModelError("matrix is not Hermitian (max |A - A^dagger| = " + std::to_string(asymmetry) + ")");
    }

    const auto n = static_cast<Eigen::Index>(m.rows());
    Eigen::MatrixXcd em(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            em(r, c) = m(static_cast<size_t>(r), static_cast<size_t>(c));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em);
    if (solver.info() != Eigen::Success) {
        throw ModelError("eigensolver failed to converge");
    }
    const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
    const Eigen::MatrixXcd& vectors = solver.eigenvectors();

    Observable obs;
    obs.matrix_ = m;
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && values(end) - values(end - 1) <= degeneracy_tol) {
            ++end;
        }
        double mean = 0;
        ComplexMatrix projector(m.rows(), m.rows());
        ComplexVector v(m.rows());
        for (Eigen::Index k = start; k < end; ++k) {
            mean += values(k);
            for (Eigen::Index r = 0; r < n; ++r) {
                v[static_cast<size_t>(r)] = vectors(r, k);
            }
            projector += outer(v, v);
        }
        mean /= static_cast<double>(end - start);

        if (!exact_values.empty()) {
            auto hit = std::find_if(exact_values.begin(), exact_values.end(),
                                    [&](double x) { return std::abs(x - mean) <= degeneracy_tol; });
            if (hit == exact_values.end()) {
                throw ModelError("eigenvalue " + std::to_string(mean) + " matches none of the supplied exact values");
            }
            mean = *hit;
        }
        obs.spectrum_.push_back(mean);
        obs.projectors_.push_back(std::move(projector));
        start = end;
    }
    return obs;
}

std::vector<Outcome> CompositeObservable::outcome_space() const {
    std::vector<Outcome> out;
    std::vector<size_t> idx(parts_.size(), 0);
    while (true) {
        Outcome o(parts_.size());
        for (size_t i = 0; i < parts_.size(); ++i) {
            o[i] = parts_[i].spectrum()[idx[i]];
        }
        out.push_back(std::move(o));
        size_t k = parts_.size();
        while (k > 0) {
            --k;
            if (++idx[k] < parts_[k].spectrum().size()) {
                break;
            }
            idx[k] = 0;
            if (k == 0) {
                return out;
            }
        }
    }
}

CompositeObservable compose(std::vector<Observable> parts) {
    if (parts.empty()) {
        throw std::invalid_argument("a composite observable needs at least one part");
    }
    const size_t dim = parts.front().dim();
    for (size_t i = 1; i < parts.size(); ++i) {
        if (parts[i].dim() != dim) {
            throw DimensionMismatch("observable " + std::to_string(i) + " has dimension " +
                                    std::to_string(parts[i].dim()) + ", expected " + std::to_string(dim));
        }
    }
    for (size_t i = 0; i < parts.size(); ++i) {
        for (size_t j = i + 1; j < parts.size(); ++j) {
            double worst = 0;
            for (const ComplexMatrix& p : parts[i].projectors()) {
                for (const ComplexMatrix& q : parts[j].projectors()) {
                    worst = std::max(worst, max_abs(commutator(p, q)));
                }
            }
            if (worst > kCommutationTol) {
                throw NonCommutingError(i, j, worst);
            }
        }
    }

    CompositeObservable c;
    c.parts_ = std::move(parts);
    for (Outcome& o : c.outcome_space()) {
        ComplexMatrix product = joint_projector(c, o);
        // A product of commuting projectors is a projector; its trace is its rank.
        if (product.trace().real() > 0.5) {
            c.support_.push_back({std::move(o), std::move(product)});
        }
    }
    return c;
}

ComplexMatrix joint_projector(const CompositeObservable& c, std::span<const double> outcome) {
    if (outcome.size() != c.size()) {
        throw std::invalid_argument("outcome has " + std::to_string(outcome.size()) + " values for " +
                                    std::to_string(c.size()) + " observables");
    }
    ComplexMatrix product;
    for (size_t i = 0; i < c.size(); ++i) {
        const auto idx = c.part(i).index_of(outcome[i]);
        if (!idx) {
            throw std::invalid_argument("value " + std::to_string(outcome[i]) + " is not in the spectrum of observable " +
                                        std::to_string(i));
        }
        const ComplexMatrix& p = c.part(i).projectors()[*idx];
        product = i == 0 ? p : product * p;
    }
    return product;
}

}  // namespace detqm
