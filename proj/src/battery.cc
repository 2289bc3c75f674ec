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

#include "detqm/battery.h"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "detqm/simd/kernels.h"

namespace detqm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double chi_square_upper_tail(double df, double statistic) {
    return boost::math::gamma_q(df / 2.0, statistic / 2.0);
}

double normal_two_sided(double z) { return std::erfc(std::abs(z) / std::numbers::sqrt2); }

BatteryTest make(std::string name, double statistic, double p, double alpha) {
    p = std::clamp(p, 0.0, 1.0);
    return {std::move(name), statistic, p, p >= alpha};
}

BatteryTest chi_square_test(std::span<const double> u, double alpha) {
    std::vector<uint64_t> counts(kChiSquareBins, 0);
    for (double v : u) {
        counts[std::min(static_cast<size_t>(v * kChiSquareBins), kChiSquareBins - 1)]++;
    }
    const double expected = static_cast<double>(u.size()) / kChiSquareBins;
    double stat = 0;
    for (uint64_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return make("chi_square", stat, chi_square_upper_tail(kChiSquareBins - 1, stat), alpha);
}

BatteryTest serial_test(std::span<const double> u, const simd::MomentSums& m, double alpha) {
    const double pairs = static_cast<double>(u.size() - 1);
    const double first = u.front(), last = u.back();
    // Sums over the leading (u_0..u_{n-2}) and trailing (u_1..u_{n-1}) windows.
    const double sx = m.sum - last, sy = m.sum - first;
    const double sxx = m.sum_sq - last * last, syy = m.sum_sq - first * first;
    const double cov = m.sum_lag - sx * sy / pairs;
    const double vx = sxx - sx * sx / pairs;
    const double vy = syy - sy * sy / pairs;
    // Variances that are pure cancellation noise count as zero.
    if (!(vx > 1e-12 * sxx && vy > 1e-12 * syy)) {
        return make("serial_lag1", kNaN, 0.0, alpha);
    }
    const double r = cov / std::sqrt(vx * vy);
    const double z = r * std::sqrt(pairs);
    return make("serial_lag1", r, normal_two_sided(z), alpha);
}

BatteryTest monobit_test(std::span<const double> u, const simd::MomentSums& m, double alpha) {
    const double n = static_cast<double>(u.size());
    const double s = (2.0 * static_cast<double>(m.upper) - n) / std::sqrt(n);
    return make("monobit", s, normal_two_sided(s), alpha);
}

BatteryTest gap_test(std::span<const double> u, double alpha) {
    constexpr double kLow = 0.0, kHigh = 0.5;
    constexpr double p = kHigh - kLow, q = 1.0 - p;
    constexpr size_t kMaxCategories = 30;

    std::vector<uint64_t> gaps;
    bool seen_hit = false;
    uint64_t run = 0;
    for (double v : u) {
        if (v >= kLow && v < kHigh) {
            if (seen_hit) {
                gaps.push_back(run);
            }
            seen_hit = true;
            run = 0;
        } else {
            ++run;
        }
    }
    const double m = static_cast<double>(gaps.size());
    if (gaps.size() < 20) {
        return make("gap", kNaN, 0.0, alpha);
    }
    size_t t = 1;
    while (t < kMaxCategories && m * std::pow(q, static_cast<double>(t + 1)) >= 5.0) {
        ++t;
    }
    std::vector<uint64_t> counts(t + 1, 0);
    for (uint64_t g : gaps) {
        counts[std::min<uint64_t>(g, t)]++;
    }
    double stat = 0;
    for (size_t r = 0; r <= t; ++r) {
        const double prob = r < t ? p * std::pow(q, static_cast<double>(r)) : std::pow(q, static_cast<double>(t));
        const double expected = m * prob;
        const double d = static_cast<double>(counts[r]) - expected;
        stat += d * d / expected;
    }
    return make("gap", stat, chi_square_upper_tail(static_cast<double>(t), stat), alpha);
}

BatteryTest ks_test(std::span<const double> u, double alpha) {
    std::vector<double> sorted(u.begin(), u.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0;
    for (size_t i = 0; i < sorted.size(); ++i) {
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, hi - sorted[i], sorted[i] - lo});
    }
    const double sn = std::sqrt(n);
    return make("ks", d, kolmogorov_q((sn + 0.12 + 0.11 / sn) * d), alpha);
}

}  // namespace

double kolmogorov_q(double lambda) {
    if (lambda <= 0) {
        return 1.0;
    }
    if (lambda < 1.18) {
        // Jacobi-transformed series, fast for small lambda.
        const double y = std::exp(-std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda));
        double sum = 0;
        for (int k = 1; k <= 15; k += 2) {
            sum += std::pow(y, k * k);
        }
        return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
    }
    double sum = 0;
    double sign = 1;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-300) {
            break;
        }
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

bool BatteryReport::all_passed() const {
    return std::all_of(tests.begin(), tests.end(), [](const BatteryTest& t) { return t.passed; });
}

const BatteryTest& BatteryReport::test(const std::string& name) const {
    for (const BatteryTest& t : tests) {
        if (t.name == name) {
            return t;
        }
    }
    throw std::out_of_range("no battery test named " + name);
}

BatteryReport run_battery(std::span<const double> stream, double alpha) {
    if (stream.size() < kMinBatterySamples) {
        throw std::invalid_argument("the battery needs at least " + std::to_string(kMinBatterySamples) +
                                    " values, got " + std::to_string(stream.size()));
    }
    if (!(alpha > 0 && alpha < 1)) {
        throw std::invalid_argument("significance level must lie in (0, 1)");
    }
    for (double v : stream) {
        if (!(v >= 0.0 && v < 1.0)) {
            throw std::invalid_argument("battery input must lie in [0, 1)");
        }
    }
    const simd::MomentSums moments = simd::kernels().moments(stream.data(), stream.size());

    BatteryReport report;
    report.n = stream.size();
    report.alpha = alpha;
    report.tests.push_back(chi_square_test(stream, alpha));
    report.tests.push_back(serial_test(stream, moments, alpha));
    report.tests.push_back(monobit_test(stream, moments, alpha));
    report.tests.push_back(gap_test(stream, alpha));
    report.tests.push_back(ks_test(stream, alpha));
    return report;
}

BatteryReport run_battery(const PhaseClock& clock, int64_t first_tick, size_t n, double alpha) {
    if (n < kMinBatterySamples) {
        throw std::invalid_argument("the battery needs at least " + std::to_string(kMinBatterySamples) +
                                    " values, got " + std::to_string(n));
    }
    std::vector<double> values(n);
    clock.fill(first_tick, values);
    return run_battery(values, alpha);
}

}  // namespace detqm
