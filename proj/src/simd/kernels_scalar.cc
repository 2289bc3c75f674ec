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

namespace detqm::simd {
namespace {

Complex dotc_scalar(const Complex* x, const Complex* y, size_t n) {
    double even_re = 0, even_im = 0, odd_re = 0, odd_im = 0;
    const size_t paired = n & ~size_t{1};
    for (size_t i = 0; i < paired; i += 2) {
        double xr = x[i].real(), xi = x[i].imag(), yr = y[i].real(), yi = y[i].imag();
        even_re += xr * yr + xi * yi;
        even_im += xr * yi - xi * yr;
        xr = x[i + 1].real(), xi = x[i + 1].imag(), yr = y[i + 1].real(), yi = y[i + 1].imag();
        odd_re += xr * yr + xi * yi;
        odd_im += xr * yi - xi * yr;
    }
    double re = even_re + odd_re;
    double im = even_im + odd_im;
    if (n & 1) {
        const double xr = x[n - 1].real(), xi = x[n - 1].imag();
        const double yr = y[n - 1].real(), yi = y[n - 1].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

Complex dotu_scalar(const Complex* x, const Complex* y, size_t n) {
    double even_re = 0, even_im = 0, odd_re = 0, odd_im = 0;
    const size_t paired = n & ~size_t{1};
    for (size_t i = 0; i < paired; i += 2) {
        double xr = x[i].real(), xi = x[i].imag(), yr = y[i].real(), yi = y[i].imag();
        even_re += xr * yr - xi * yi;
        even_im += xr * yi + xi * yr;
        xr = x[i + 1].real(), xi = x[i + 1].imag(), yr = y[i + 1].real(), yi = y[i + 1].imag();
        odd_re += xr * yr - xi * yi;
        odd_im += xr * yi + xi * yr;
    }
    double re = even_re + odd_re;
    double im = even_im + odd_im;
    if (n & 1) {
        const double xr = x[n - 1].real(), xi = x[n - 1].imag();
        const double yr = y[n - 1].real(), yi = y[n - 1].imag();
        re += xr * yr - xi * yi;
        im += xr * yi + xi * yr;
    }
    return {re, im};
}

void counter_hash_fill_scalar(uint64_t key, int64_t first, int64_t stride, double* out, size_t n) {
    const uint64_t step = static_cast<uint64_t>(stride);
    uint64_t counter = static_cast<uint64_t>(first);
    for (size_t i = 0; i < n; ++i, counter += step) {
        out[i] = to_unit_interval(mix64(key + counter * kGolden));
    }
}

MomentSums moments_scalar(const double* u, size_t n) {
    double s[4] = {0, 0, 0, 0};
    double q[4] = {0, 0, 0, 0};
    double l[4] = {0, 0, 0, 0};
    MomentSums out;

    const size_t blocked = n & ~size_t{3};
    for (size_t i = 0; i < blocked; i += 4) {
        for (size_t j = 0; j < 4; ++j) {
            const double v = u[i + j];
            s[j] += v;
            q[j] += v * v;
            out.upper += v >= 0.5;
        }
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
        for (size_t j = 0; j < 4; ++j) {
            l[j] += u[i + j] * u[i + j + 1];
        }
    }
    double tail_l = 0;
    for (size_t i = pairs_blocked; i < pairs; ++i) {
        tail_l += u[i] * u[i + 1];
    }

    out.sum = ((s[0] + s[1]) + (s[2] + s[3])) + tail_s;
    out.sum_sq = ((q[0] + q[1]) + (q[2] + q[3])) + tail_q;
    out.sum_lag = ((l[0] + l[1]) + (l[2] + l[3])) + tail_l;
    return out;
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{dotc_scalar, dotu_scalar, counter_hash_fill_scalar, moments_scalar};
    return table;
}

}  // namespace detqm::simd
