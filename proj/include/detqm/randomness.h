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

#ifndef DETQM_RANDOMNESS_H
#define DETQM_RANDOMNESS_H

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>

namespace detqm {

/// Fractional part of 1000000 * sin(i), evaluated in double precision.
double sine_fold(int64_t i);

/// xi -> exp(2 pi i xi). Throws std::invalid_argument unless 0 <= xi < 1.
std::complex<double> tau(double xi);

/// Inverse of tau: the angle of w in turns, mapped into [0, 1).
double tau_inverse(std::complex<double> w);

enum class ClockScheme { kSineFold, kCounterHash, kConstant, kWeighted };

std::string_view scheme_name(ClockScheme s);
/// Accepts "sine_fold" and "counter_hash"; "constant" only when allow_constant.
ClockScheme parse_scheme(std::string_view name, bool allow_constant = false);

/// A deterministic map from integer ticks to [0, 1).
///
///   sine_fold:    sine_fold(seed_offset + tick * tick_scale)
///   counter_hash: splitmix64 over the counter tick * tick_scale, keyed by
///                 mix64(seed_offset); the top 53 bits scaled to [0, 1)
///   constant:     a fixed value (test hook; fails any uniformity test)
///   weighted:     frac(w1 * c1(tick) + w2 * c2(tick)), w1 + w2 = 1
///
/// Values are immutable; copies share the sub-clocks of a weighted clock.
class PhaseClock {
  public:
    /// counter_hash, seed 0, scale 1.
    PhaseClock() = default;

    static PhaseClock sine_fold(int64_t seed_offset = 0, int64_t tick_scale = 1);
    static PhaseClock counter_hash(int64_t seed_offset = 0, int64_t tick_scale = 1);
    static PhaseClock constant(double value);
    static PhaseClock weighted(const PhaseClock& first, double first_weight, const PhaseClock& second,
                               double second_weight);
    static PhaseClock of(ClockScheme scheme, int64_t seed_offset, int64_t tick_scale = 1);

    ClockScheme scheme() const { return scheme_; }
    int64_t seed_offset() const { return seed_offset_; }
    int64_t tick_scale() const { return tick_scale_; }

    /// chi(tick)
    double value(int64_t tick) const;
    /// chi_tau(tick) = tau(chi(tick))
    std::complex<double> phase(int64_t tick) const;

    /// value(first), value(first + 1), ... into out.
    void fill(int64_t first, std::span<double> out) const;

  private:
    struct Blend;

    ClockScheme scheme_ = ClockScheme::kCounterHash;
    int64_t seed_offset_ = 0;
    int64_t tick_scale_ = 1;
    double constant_ = 0;
    std::shared_ptr<const Blend> blend_;
};

inline double clock_value(const PhaseClock& c, int64_t tick) { return c.value(tick); }

}  // namespace detqm

#endif  // DETQM_RANDOMNESS_H
