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

#include "detqm/epr.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "detqm/errors.h"

namespace detqm::epr {

namespace {

constexpr double kHalfSpin[] = {-0.5, 0.5};
constexpr double kTotalSpinSquared[] = {0.0, 2.0};

SpinOperators make_spin_operators() {
    const Complex i(0, 1);
    const ComplexMatrix one = ComplexMatrix::identity(2);
    SpinOperators s;
    s.sx = ComplexMatrix::from_rows({{0, 0.5}, {0.5, 0}});
    s.sy = ComplexMatrix::from_rows({{0, -0.5 * i}, {0.5 * i, 0}});
    s.sz = ComplexMatrix::from_rows({{0.5, 0}, {0, -0.5}});
    s.sx1 = tensor_product(s.sx, one);
    s.sy1 = tensor_product(s.sy, one);
    s.sz1 = tensor_product(s.sz, one);
    s.sx2 = tensor_product(one, s.sx);
    s.sy2 = tensor_product(one, s.sy);
    s.sz2 = tensor_product(one, s.sz);
    s.Sx = s.sx1 + s.sx2;
    s.Sy = s.sy1 + s.sy2;
    s.Sz = s.sz1 + s.sz2;
    s.S2 = s.Sx * s.Sx + s.Sy * s.Sy + s.Sz * s.Sz;
    return s;
}

ComplexVector singlet_direction(const SpinOperators& ops) {
    const Observable total = spectral_decompose(ops.S2, kDefaultDegeneracyTol, kTotalSpinSquared);
    const auto zero = total.index_of(0.0);
    if (!zero || total.spectrum().size() != 2) {
        throw ModelError("S^2 does not split into singlet and triplet spaces");
    }
    const ComplexMatrix& p = total.projectors()[*zero];
    if (std::abs(p.trace().real() - 1.0) > 1e-9) {
        throw ModelError("the singlet space of S^2 is not one-dimensional");
    }
    // Any nonzero column of a rank-1 projector spans its range.
    const ComplexMatrix cols = p.transpose();
    size_t best = 0;
    for (size_t c = 1; c < cols.rows(); ++c) {
        if (norm(cols.row(c)) > norm(cols.row(best))) {
            best = c;
        }
    }
    return ComplexVector(cols.row(best).begin(), cols.row(best).end());
}

}  // namespace

const SpinOperators& spin_operators() {
    static const SpinOperators ops = make_spin_operators();
    return ops;
}

ComplexMatrix rotation(double theta1, double theta2) {
    const auto half_turn = [](double theta) {
        const Complex plus = std::polar(1.0, theta / 2), minus = std::polar(1.0, -theta / 2);
        return ComplexMatrix::from_rows({{plus, 0}, {0, minus}});
    };
    return tensor_product(half_turn(theta1), half_turn(theta2));
}

EprModel build_model(double theta1, double theta2, const PhaseClock& clock, int64_t birth_tick) {
    if (!std::isfinite(theta1) || !std::isfinite(theta2)) {
        throw std::invalid_argument("angles must be finite");
    }
    const SpinOperators& ops = spin_operators();
    const ComplexMatrix u = rotation(theta1, theta2);
    const ComplexMatrix u_inverse = rotation(-theta1, -theta2);

    SelectorBasis basis = SelectorBasis::standard(4);
    StateVector singlet = birth_phase(singlet_direction(ops), clock, birth_tick, basis);
    Observable a = spectral_decompose(u * ops.sx1 * u_inverse, kDefaultDegeneracyTol, kHalfSpin);
    Observable b = spectral_decompose(u * ops.sx2 * u_inverse, kDefaultDegeneracyTol, kHalfSpin);
    CompositeObservable composite = compose({a, b});
    return {theta1, theta2, std::move(singlet), std::move(a), std::move(b), std::move(composite), std::move(basis)};
}

double exact_correlation(const EprModel& m) {
    const ComplexMatrix& a = m.a.matrix();
    const ComplexMatrix& b = m.b.matrix();
    const auto expect = [&](const ComplexMatrix& op) {
        return inner_product(m.singlet.amplitudes(), apply(op, m.singlet.amplitudes())).real();
    };
    return expect(a * b) / (std::sqrt(expect(a * a)) * std::sqrt(expect(b * b)));
}

void RunningCorrelation::add(double a, double b) {
    ++count_;
    sum_ab_ += a * b;
    sum_aa_ += a * a;
    sum_bb_ += b * b;
}

double RunningCorrelation::value() const {
    if (count_ == 0) {
        return 0.0;
    }
    // sqrt(x) * sqrt(y) taken as sqrt(x * y): the same quantity, but exact
    // when x == y, so perfectly (anti-)correlated data gives exactly +-1.
    return sum_ab_ / std::sqrt(sum_aa_ * sum_bb_);
}

void CorrelationTrace::push(Sample s) {
    samples_.push_back(s);
    running_.add(s.a, s.b);
    correlations_.push_back(running_.value());
}

std::span<const double> CorrelationTrace::window() const {
    const size_t n = std::min(kWindowSize, correlations_.size());
    return std::span<const double>(correlations_).last(n);
}

Sample measure_once(const EprModel& m, const PhaseClock& clock, int64_t tick) {
    const auto records = measure_sequence(m.composite, m.singlet, clock, tick, 1, m.basis, SequenceMode::kRebirth);
    return {records.front().outcome[0], records.front().outcome[1]};
}

CorrelationTrace run_epr(const EprModel& m, const PhaseClock& clock, int64_t start_tick, size_t n) {
    if (n == 0) {
        throw std::invalid_argument("run_epr needs at least one sample");
    }
    CorrelationTrace trace;
    for (const MeasurementRecord& r :
         measure_sequence(m.composite, m.singlet, clock, start_tick, n, m.basis, SequenceMode::kRebirth)) {
        trace.push({r.outcome[0], r.outcome[1]});
    }
    return trace;
}

ArrowPair arrow_endpoints(Sample s, double theta1, double theta2) {
    constexpr double quarter = std::numbers::pi / 2;
    return {{s.a * std::cos(theta1 + quarter), s.a * std::sin(theta1 + quarter)},
            {s.b * std::cos(theta2 + quarter), s.b * std::sin(theta2 + quarter)}};
}

double degrees_to_radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

}  // namespace detqm::epr
