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

#ifndef DETQM_BATTERY_H
#define DETQM_BATTERY_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "detqm/randomness.h"

namespace detqm {

inline constexpr size_t kMinBatterySamples = 10000;
inline constexpr size_t kChiSquareBins = 1000;

struct BatteryTest {
    std::string name;
    double statistic = 0;  // NaN when the statistic is undefined (e.g. zero variance)
    double p_value = 0;
    bool passed = false;
};

struct BatteryReport {
    size_t n = 0;
    double alpha = 0;
    std::vector<BatteryTest> tests;

    bool all_passed() const;
    const BatteryTest& test(const std::string& name) const;
};

/// A desk-scale uniformity battery for streams in [0, 1):
///
///   chi_square   1000 equal bins, df = 999
///   serial_lag1  Pearson correlation of (u_i, u_{i+1}), z = r sqrt(n - 1)
///   monobit      leading bit u_i >= 0.5, S = (2 ones - n) / sqrt(n)
///   gap          Knuth gap test for [0, 0.5), geometric categories 0..t-1
///                plus a tail, t the largest value (<= 30) keeping the
///                expected tail count >= 5
///   ks           Kolmogorov-Smirnov against U(0, 1)
///
/// A test passes when its p-value is >= alpha. Throws std::invalid_argument
/// when n < 10^4, alpha is outside (0, 1), or a value lies outside [0, 1).
BatteryReport run_battery(std::span<const double> stream, double alpha);

/// Runs the battery on clock.value(first_tick), ..., n values.
BatteryReport run_battery(const PhaseClock& clock, int64_t first_tick, size_t n, double alpha);

/// Upper tail of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_q(double lambda);

}  // namespace detqm

#endif  // DETQM_BATTERY_H
