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

#ifndef DETQM_EPR_H
#define DETQM_EPR_H

#include <cstdint>
#include <span>
#include <vector>

#include "detqm/linalg.h"
#include "detqm/randomness.h"
#include "detqm/selector.h"
#include "detqm/spectral.h"

// Two spin-1/2 particles in the singlet state, measured along directions
// rotated by theta1 and theta2 about the z axis.
namespace detqm::epr {

/// The 2x2 and 4x4 spin operators of the two-particle model. Basis order of
/// C^2 (x) C^2 is |uu>, |ud>, |du>, |dd>.
struct SpinOperators {
    ComplexMatrix sx, sy, sz;      // Pauli / 2
    ComplexMatrix sx1, sy1, sz1;   // s (x) 1
    ComplexMatrix sx2, sy2, sz2;   // 1 (x) s
    ComplexMatrix Sx, Sy, Sz;      // totals
    ComplexMatrix S2;              // Sx^2 + Sy^2 + Sz^2
};

const SpinOperators& spin_operators();

/// exp(i theta1 sz) (x) exp(i theta2 sz), with exp(i theta sz) taken in
/// closed form as diag(e^{i theta/2}, e^{-i theta/2}).
ComplexMatrix rotation(double theta1, double theta2);

/// Identifies the standard basis of C^4 in trace metadata.
inline constexpr const char* kBasisId = "standard:|uu>,|ud>,|du>,|dd>";

struct EprModel {
    double theta1 = 0;  // radians
    double theta2 = 0;
    StateVector singlet;
    Observable a;  // U sx1 U^dagger, spectrum exactly {-1/2, 1/2}
    Observable b;  // U sx2 U^dagger
    CompositeObservable composite;
    SelectorBasis basis;
};

/// Builds the operators, extracts the singlet as the eigenvalue-0 eigenvector
/// of S^2 and gives it its birth phase from clock at birth_tick.
EprModel build_model(double theta1, double theta2, const PhaseClock& clock = {}, int64_t birth_tick = 0);

/// <psi, A B psi> / (sqrt<psi, A^2 psi> sqrt<psi, B^2 psi>) by matrix arithmetic.
double exact_correlation(const EprModel& m);

/// Running spin-spin correlation c = sum ab / (sqrt(sum a^2) sqrt(sum b^2)).
class RunningCorrelation {
  public:
    void add(double a, double b);
    void reset() { *this = {}; }
    size_t count() const { return count_; }
    /// 0 before the first sample.
    double value() const;

  private:
    size_t count_ = 0;
    double sum_ab_ = 0;
    double sum_aa_ = 0;
    double sum_bb_ = 0;
};

struct Sample {
    double a = 0;
    double b = 0;
};

inline constexpr size_t kWindowSize = 200;

/// Samples with the correlation after each one.
class CorrelationTrace {
  public:
    void push(Sample s);

    std::span<const Sample> samples() const { return samples_; }
    /// c_1 .. c_n
    std::span<const double> correlations() const { return correlations_; }
    /// The most recent (up to 200) correlation values.
    std::span<const double> window() const;
    double final_correlation() const { return correlations_.empty() ? 0.0 : correlations_.back(); }
    size_t size() const { return samples_.size(); }

  private:
    std::vector<Sample> samples_;
    std::vector<double> correlations_;
    RunningCorrelation running_;
};

/// One measurement of a freshly born singlet at tick.
Sample measure_once(const EprModel& m, const PhaseClock& clock, int64_t tick);

/// n rebirth-mode measurements at ticks start_tick, start_tick + 1, ...
CorrelationTrace run_epr(const EprModel& m, const PhaseClock& clock, int64_t start_tick, size_t n);

struct Point {
    double x = 0;
    double y = 0;
};

struct ArrowPair {
    Point red;    // first spin
    Point green;  // second spin
};

/// Arrow tips for a sample; angle 0 points vertically.
ArrowPair arrow_endpoints(Sample s, double theta1, double theta2);

double degrees_to_radians(double degrees);

}  // namespace detqm::epr

#endif  // DETQM_EPR_H
