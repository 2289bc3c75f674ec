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

#include "detqm/randomness.h"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "detqm/simd/kernels.h"

namespace detqm {

struct PhaseClock::Blend {
    std::array<PhaseClock, 2> clocks;
    std::array<double, 2> weights;
};

double sine_fold(int64_t i) {
    const double x = 1000000.0 * std::sin(static_cast<double>(i));
    const double f = x - std::floor(x);
    // x - floor(x) can round up to 1 for tiny negative x.
    return f < 1.0 ? f : 0.0;
}

std::complex<double> tau(double xi) {
    if (!(xi >= 0.0 && xi < 1.0)) {
        throw std::invalid_argument("tau expects a value in [0, 1)");
    }
    // Exact values at the quarter turns keep tau(0.25) == i bit-for-bit.
    if (xi == 0.0) return {1.0, 0.0};
    if (xi == 0.25) return {0.0, 1.0};
    if (xi == 0.5) return {-1.0, 0.0};
    if (xi == 0.75) return {0.0, -1.0};
    const double angle = 2.0 * std::numbers::pi * xi;
    return {std::cos(angle), std::sin(angle)};
}

double tau_inverse(std::complex<double> w) {
    double turns = std::arg(w) / (2.0 * std::numbers::pi);
    if (turns < 0) {
        turns += 1.0;
    }
    return turns < 1.0 ? turns : 0.0;
}

std::string_view scheme_name(ClockScheme s) {
    switch (s) {
        case ClockScheme::kSineFold:
            return "sine_fold";
        case ClockScheme::kCounterHash:
            return "counter_hash";
        case ClockScheme::kConstant:
            return "constant";
        case ClockScheme::kWeighted:
            return "weighted";
    }
    return "unknown";
}

ClockScheme parse_scheme(std::string_view name, bool allow_constant) {
    if (name == "sine_fold") return ClockScheme::kSineFold;
    if (name == "counter_hash") return ClockScheme::kCounterHash;
    if (allow_constant && name == "constant") return ClockScheme::kConstant;
    throw std::invalid_argument("unknown clock scheme '" + std::string(name) + "'");
}

PhaseClock PhaseClock::sine_fold(int64_t seed_offset, int64_t tick_scale) {
    return of(ClockScheme::kSineFold, seed_offset, tick_scale);
}

PhaseClock PhaseClock::counter_hash(int64_t seed_offset, int64_t tick_scale) {
    return of(ClockScheme::kCounterHash, seed_offset, tick_scale);
}

PhaseClock PhaseClock::constant(double value) {
    if (!(value >= 0.0 && value < 1.0)) {
        throw std::invalid_argument("constant clock value must lie in [0, 1)");
    }
    PhaseClock c;
    c.scheme_ = ClockScheme::kConstant;
    c.constant_ = value;
    return c;
}

PhaseClock PhaseClock::weighted(const PhaseClock& first, double first_weight, const PhaseClock& second,
                                double second_weight) {
    if (!(first_weight >= 0 && second_weight >= 0) || std::abs(first_weight + second_weight - 1.0) > 1e-12) {
        throw std::invalid_argument("blend weights must be non-negative and sum to 1");
    }
    PhaseClock c;
    c.scheme_ = ClockScheme::kWeighted;
    c.blend_ = std::make_shared<const Blend>(Blend{{first, second}, {first_weight, second_weight}});
    return c;
}

PhaseClock PhaseClock::of(ClockScheme scheme, int64_t seed_offset, int64_t tick_scale) {
    if (scheme != ClockScheme::kSineFold && scheme != ClockScheme::kCounterHash) {
        throw std::invalid_argument("PhaseClock::of only builds sine_fold and counter_hash clocks");
    }
    if (tick_scale < 1) {
        throw std::invalid_argument("tick scale must be a positive integer");
    }
    PhaseClock c;
    c.scheme_ = scheme;
    c.seed_offset_ = seed_offset;
    c.tick_scale_ = tick_scale;
    return c;
}

namespace {

uint64_t hash_key(int64_t seed_offset) { return simd::mix64(static_cast<uint64_t>(seed_offset) + simd::kGolden); }

double fractional(double x) {
    const double f = x - std::floor(x);
    return f < 1.0 ? f : 0.0;
}

}  // namespace

double PhaseClock::value(int64_t tick) const {
    switch (scheme_) {
        case ClockScheme::kSineFold:
            return detqm::sine_fold(static_cast<int64_t>(static_cast<uint64_t>(seed_offset_) +
                                                         static_cast<uint64_t>(tick) * static_cast<uint64_t>(tick_scale_)));
        case ClockScheme::kCounterHash: {
            const uint64_t counter = static_cast<uint64_t>(tick) * static_cast<uint64_t>(tick_scale_);
            return simd::to_unit_interval(simd::mix64(hash_key(seed_offset_) + counter * simd::kGolden));
        }
        case ClockScheme::kConstant:
            return constant_;
        case ClockScheme::kWeighted:
            return fractional(blend_->weights[0] * blend_->clocks[0].value(tick) +
                              blend_->weights[1] * blend_->clocks[1].value(tick));
    }
    return 0;
}

std::complex<double> PhaseClock::phase(int64_t tick) const { return tau(value(tick)); }

void PhaseClock::fill(int64_t first, std::span<double> out) const {
    switch (scheme_) {
        case ClockScheme::kCounterHash:
            simd::kernels().counter_hash_fill(
                hash_key(seed_offset_),
                static_cast<int64_t>(static_cast<uint64_t>(first) * static_cast<uint64_t>(tick_scale_)), tick_scale_,
                out.data(), out.size());
            return;
        case ClockScheme::kWeighted: {
            std::vector<double> second(out.size());
            blend_->clocks[0].fill(first, out);
            blend_->clocks[1].fill(first, second);
            for (size_t i = 0; i < out.size(); ++i) {
                out[i] = fractional(blend_->weights[0] * out[i] + blend_->weights[1] * second[i]);
            }
            return;
        }
        default:
            for (size_t i = 0; i < out.size(); ++i) {
                out[i] = value(first + static_cast<int64_t>(i));
            }
    }
}

}  // namespace detqm
