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

#include "detqm/simd/kernels.h"

#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <random>
#include <vector>

#include "test_support.h"

using namespace detqm::simd;

namespace {

bool same_bits(double a, double b) { return std::bit_cast<uint64_t>(a) == std::bit_cast<uint64_t>(b); }

bool same_bits(Complex a, Complex b) { return same_bits(a.real(), b.real()) && same_bits(a.imag(), b.imag()); }

const KernelTable* avx2_or_skip() {
    if (!avx2_supported()) {
        return nullptr;
    }
    return avx2_kernels();
}

std::vector<Complex> random_complex(size_t n, std::mt19937_64& rng) {
    std::vector<Complex> v(n);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (Complex& z : v) z = Complex(u(rng), u(rng));
    return v;
}

}  // namespace

TEST(Kernels, mix64_matches_published_splitmix64_outputs) {
    // splitmix64 seeded with 0: state advances by the golden gamma, then mixes.
    EXPECT_EQ(mix64(kGolden), 0xE220A8397B1DCDAFull);
    EXPECT_EQ(mix64(2 * kGolden), 0x6E789E6AA1B965F4ull);
    EXPECT_EQ(mix64(3 * kGolden), 0x06C45D188009454Full);
}

TEST(Kernels, to_unit_interval_uses_top_53_bits) {
    EXPECT_EQ(to_unit_interval(0), 0.0);
    EXPECT_EQ(to_unit_interval(~uint64_t{0}), 1.0 - 0x1p-53);
    EXPECT_EQ(to_unit_interval(uint64_t{1} << 63), 0.5);
    EXPECT_EQ(to_unit_interval(0x7FF), 0.0);
}

TEST(Kernels, scalar_dot_products_match_definition) {
    const std::vector<Complex> x = {{1, 2}, {3, -1}, {0, 1}};
    const std::vector<Complex> y = {{2, 0}, {1, 1}, {-1, 4}};
    const Complex expect_c = std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1] + std::conj(x[2]) * y[2];
    const Complex expect_u = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    EXPECT_EQ(scalar_kernels().dotc(x.data(), y.data(), 3), expect_c);
    EXPECT_EQ(scalar_kernels().dotu(x.data(), y.data(), 3), expect_u);
    EXPECT_EQ(scalar_kernels().dotc(x.data(), y.data(), 0), Complex(0));
}

TEST(Kernels, scalar_counter_hash_fill_matches_mix64) {
    std::vector<double> out(37);
    const uint64_t key = 0x1234567890ABCDEFull;
    scalar_kernels().counter_hash_fill(key, -5, 3, out.data(), out.size());
    for (size_t i = 0; i < out.size(); ++i) {
        const uint64_t counter = static_cast<uint64_t>(-5 + 3 * static_cast<int64_t>(i));
        EXPECT_EQ(out[i], to_unit_interval(mix64(key + counter * kGolden))) << i;
    }
}

TEST(Kernels, scalar_moments_match_definition) {
    const std::vector<double> u = {0.1, 0.7, 0.5, 0.2, 0.9};
    const MomentSums m = scalar_kernels().moments(u.data(), u.size());
    EXPECT_NEAR(m.sum, 2.4, 1e-15);
    EXPECT_NEAR(m.sum_sq, 0.01 + 0.49 + 0.25 + 0.04 + 0.81, 1e-15);
    EXPECT_NEAR(m.sum_lag, 0.07 + 0.35 + 0.1 + 0.18, 1e-15);
    EXPECT_EQ(m.upper, 3u);
}

TEST(Kernels, avx2_dot_products_are_bit_identical_to_scalar) {
    const KernelTable* avx = avx2_or_skip();
    if (avx == nullptr) GTEST_SKIP() << "no AVX2 on this machine";
    auto rng = detqm::gen::test_rng(10);
    for (size_t n = 0; n <= 67; ++n) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto x = random_complex(n, rng);
            const auto y = random_complex(n, rng);
            ASSERT_TRUE(same_bits(scalar_kernels().dotc(x.data(), y.data(), n), avx->dotc(x.data(), y.data(), n)))
                << "n=" << n;
            ASSERT_TRUE(same_bits(scalar_kernels().dotu(x.data(), y.data(), n), avx->dotu(x.data(), y.data(), n)))
                << "n=" << n;
        }
    }
}

TEST(Kernels, avx2_counter_hash_fill_is_bit_identical_to_scalar) {
    const KernelTable* avx = avx2_or_skip();
    if (avx == nullptr) GTEST_SKIP() << "no AVX2 on this machine";
    auto rng = detqm::gen::test_rng(11);
    std::uniform_int_distribution<int64_t> any;
    for (size_t n = 0; n <= 70; ++n) {
        const uint64_t key = rng();
        const int64_t first = any(rng);
        const int64_t stride = 1 + static_cast<int64_t>(rng() % 1000);
        std::vector<double> a(n), b(n);
        scalar_kernels().counter_hash_fill(key, first, stride, a.data(), n);
        avx->counter_hash_fill(key, first, stride, b.data(), n);
        ASSERT_EQ(0, std::memcmp(a.data(), b.data(), n * sizeof(double))) << "n=" << n;
    }
}

TEST(Kernels, avx2_moments_are_bit_identical_to_scalar) {
    const KernelTable* avx = avx2_or_skip();
    if (avx == nullptr) GTEST_SKIP() << "no AVX2 on this machine";
    auto rng = detqm::gen::test_rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 100, 1001, 4099}) {
        std::vector<double> v(n);
        for (double& x : v) x = u(rng);
        const MomentSums s = scalar_kernels().moments(v.data(), n);
        const MomentSums a = avx->moments(v.data(), n);
        EXPECT_TRUE(same_bits(s.sum, a.sum)) << n;
        EXPECT_TRUE(same_bits(s.sum_sq, a.sum_sq)) << n;
        EXPECT_TRUE(same_bits(s.sum_lag, a.sum_lag)) << n;
        EXPECT_EQ(s.upper, a.upper) << n;
    }
}

TEST(Kernels, backend_selection) {
    {
        ScopedBackend scalar(Backend::kScalar);
        EXPECT_EQ(active_backend(), Backend::kScalar);
        EXPECT_EQ(&kernels(), &scalar_kernels());
    }
    if (avx2_supported()) {
        ScopedBackend avx(Backend::kAvx2);
        EXPECT_EQ(active_backend(), Backend::kAvx2);
        EXPECT_EQ(backend_name(active_backend()), "avx2");
    } else {
        EXPECT_THROW(set_backend(Backend::kAvx2), std::invalid_argument);
    }
}
