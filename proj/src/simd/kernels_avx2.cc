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

// Compiled with -mavx2 (and without -mfma). Only reached through the dispatch
// table after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "detqm/simd/kernels.h"

namespace detqm::simd {
namespace {

// [re0, im0, re1, im1] from the pairwise horizontal results.
inline __m256d interleave(__m256d re_pairs, __m256d im_pairs) {
    return _mm256_blend_pd(re_pairs, im_pairs, 0b1010);
}

Complex finish_complex(__m256d acc, const Complex* x, const Complex* y, size_t n, bool conjugate) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double re = lanes[0] + lanes[2];
    double im = lanes[1] + lanes[3];
    if (n & 1) {
        const double xr = x[n - 1].real(), xi = x[n - 1].imag();
        const double yr = y[n - 1].real(), yi = y[n - 1].imag();
        if (conjugate) {
            re += xr * yr + xi * yi;
            im += xr * yi - xi * yr;
        } else {
            re += xr * yr - xi * yi;
            im += xr * yi + xi * yr;
        }
    }
    return {re, im};
}

Complex dotc_avx2(const Complex* x, const Complex* y, size_t n) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    const size_t paired = n & ~size_t{1};
    for (size_t i = 0; i < paired; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        const __m256d ysw = _mm256_permute_pd(yv, 0b0101);
        const __m256d p_re = _mm256_mul_pd(xv, yv);   // xr*yr, xi*yi
        const __m256d p_im = _mm256_mul_pd(xv, ysw);  // xr*yi, xi*yr
        acc = _mm256_add_pd(acc, interleave(_mm256_hadd_pd(p_re, p_re), _mm256_hsub_pd(p_im, p_im)));
    }
    return finish_complex(acc, x, y, n, true);
}

Complex dotu_avx2(const Complex* x, const Complex* y, size_t n) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d acc = _mm256_setzero_pd();
    const size_t paired = n & ~size_t{1};
    for (size_t i = 0; i < paired; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        const __m256d ysw = _mm256_permute_pd(yv, 0b0101);
        const __m256d p_re = _mm256_mul_pd(xv, yv);
        const __m256d p_im = _mm256_mul_pd(xv, ysw);
        acc = _mm256_add_pd(acc, interleave(_mm256_hsub_pd(p_re, p_re), _mm256_hadd_pd(p_im, p_im)));
    }
    return finish_complex(acc, x, y, n, false);
}

// Low 64 bits of a 64x64 product per lane.
inline __m256i mullo64(__m256i a, __m256i b) {
    const __m256i lo = _mm256_mul_epu32(a, b);
    const __m256i c1 = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), b);
    const __m256i c2 = _mm256_mul_epu32(a, _mm256_srli_epi64(b, 32));
    return _mm256_add_epi64(lo, _mm256_slli_epi64(_mm256_add_epi64(c1, c2), 32));
}

inline __m256i mix64_avx2(__m256i z) {
    const __m256i m1 = _mm256_set1_epi64x(static_cast<long long>(0xBF58476D1CE4E5B9ull));
    const __m256i m2 = _mm256_set1_epi64x(static_cast<long long>(0x94D049BB133111EBull));
    z = mullo64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 30)), m1);
    z = mullo64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 27)), m2);
    return _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
}

// Exact conversion of the top 53 bits, split in two halves that each fit a
// double mantissa through the 2^52 exponent trick.
inline __m256d unit_interval_avx2(__m256i z) {
    const __m256i v = _mm256_srli_epi64(z, 11);
    const __m256i magic_bits = _mm256_set1_epi64x(0x4330000000000000ll);
    const __m256d magic = _mm256_set1_pd(0x1.0p52);
    const __m256i lo_bits = _mm256_and_si256(v, _mm256_set1_epi64x(0xFFFFFFFFll));
    const __m256i hi_bits = _mm256_srli_epi64(v, 32);
    const __m256d lo = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(lo_bits, magic_bits)), magic);
    const __m256d hi = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(hi_bits, magic_bits)), magic);
    const __m256d whole = _mm256_add_pd(_mm256_mul_pd(hi, _mm256_set1_pd(0x1.0p32)), lo);
    return _mm256_mul_pd(whole, _mm256_set1_pd(0x1.0p-53));
}

void counter_hash_fill_avx2(uint64_t key, int64_t first, int64_t stride, double* out, size_t n) {
    const uint64_t step = static_cast<uint64_t>(stride);
    const uint64_t start = static_cast<uint64_t>(first);
    const __m256i golden = _mm256_set1_epi64x(static_cast<long long>(kGolden));
    const __m256i keyv = _mm256_set1_epi64x(static_cast<long long>(key));
    const __m256i advance = _mm256_set1_epi64x(static_cast<long long>(4 * step));
    __m256i counter = _mm256_set_epi64x(static_cast<long long>(start + 3 * step),
                                        static_cast<long long>(start + 2 * step),
                                        static_cast<long long>(start + step), static_cast<long long>(start));
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256i z = _mm256_add_epi64(keyv, mullo64(counter, golden));
        _mm256_storeu_pd(out + i, unit_interval_avx2(mix64_avx2(z)));
        counter = _mm256_add_epi64(counter, advance);
    }
    uint64_t c = start + i * step;
    for (; i < n; ++i, c += step) {
        out[i] = to_unit_interval(mix64(key + c * kGolden));
    }
}

MomentSums moments_avx2(const double* u, size_t n) {
    MomentSums out;
    __m256d s = _mm256_setzero_pd();
    __m256d q = _mm256_setzero_pd();
    __m256d l = _mm256_setzero_pd();
    const __m256d half = _mm256_set1_pd(0.5);

    const size_t blocked = n & ~size_t{3};
    for (size_t i = 0; i < blocked; i += 4) {
        const __m256d v = _mm256_loadu_pd(u + i);
        s = _mm256_add_pd(s, v);
        q = _mm256_add_pd(q, _mm256_mul_pd(v, v));
        out.upper += std::popcount(static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(v, half, _CMP_GE_OQ))));
    }
    double tail_s = 0, tail_q = 0;
    for (size_t i = blocked; i < n; ++i) {
        tail_s += u[i];
        tail_q += u[i] * u[i];
        out.upper += u[i] >= 0.5;
    }

    const size_t pairs = n == 0 ? 0 : n - 1;
    const size_t pairs_blocked = pairs & ~size_t{3};
    for (size_t i = 0; i < pairs_blocked; i += 4) {
        l = _mm256_add_pd(l, _mm256_mul_pd(_mm256_loadu_pd(u + i), _mm256_loadu_pd(u + i + 1)));
    }
    double tail_l = 0;
    for (size_t i = pairs_blocked; i < pairs; ++i) {
        tail_l += u[i] * u[i + 1];
    }

    alignas(32) double a[4];
    _mm256_store_pd(a, s);
    out.sum = ((a[0] + a[1]) + (a[2] + a[3])) + tail_s;
    _mm256_store_pd(a, q);
    out.sum_sq = ((a[0] + a[1]) + (a[2] + a[3])) + tail_q;
    _mm256_store_pd(a, l);
    out.sum_lag = ((a[0] + a[1]) + (a[2] + a[3])) + tail_l;
    return out;
}

}  // namespace

const KernelTable* avx2_kernels() {
    static const KernelTable table{dotc_avx2, dotu_avx2, counter_hash_fill_avx2, moments_avx2};
    return &table;
}

}  // namespace detqm::simd
