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

#ifndef DETQM_SIMD_KERNELS_H
#define DETQM_SIMD_KERNELS_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace detqm::simd {

using Complex = std::complex<double>;

enum class Backend { kScalar, kAvx2 };

std::string_view backend_name(Backend b);

/// Per-block sums used by the uniformity battery.
struct MomentSums {
    double sum = 0;        // sum u_i
    double sum_sq = 0;     // sum u_i^2
    double sum_lag = 0;    // sum u_i * u_{i+1}, i = 0..n-2
    uint64_t upper = 0;    // count of u_i >= 0.5
};

// Every kernel has a scalar reference and (on x86-64) an AVX2 variant. Both
// use the same reduction tree: four interleaved partial sums for real data,
// two (even / odd index) for complex data, combined pairwise, then the scalar
// tail is added last. With fp-contraction disabled the two variants are
// bit-identical, so results never depend on which CPU ran them.
struct KernelTable {
    /// sum conj(x_i) * y_i
    Complex (*dotc)(const Complex* x, const Complex* y, size_t n);
    /// sum x_i * y_i
    Complex (*dotu)(const Complex* x, const Complex* y, size_t n);
    /// out[i] = uniform(mix(key + (first + i * stride) * golden))
    void (*counter_hash_fill)(uint64_t key, int64_t first, int64_t stride, double* out, size_t n);
    MomentSums (*moments)(const double* u, size_t n);
};

const KernelTable& scalar_kernels();
/// Null when the binary was built without AVX2 support.
const KernelTable* avx2_kernels();

bool avx2_supported();

/// The table used by the library. Defaults to AVX2 when the CPU has it.
const KernelTable& kernels();
Backend active_backend();

/// Selects the backend process-wide. Throws std::invalid_argument if the
/// requested backend is unavailable on this machine.
void set_backend(Backend b);

/// Restores the previous backend on destruction; meant for tests.
class ScopedBackend {
  public:
    explicit ScopedBackend(Backend b);
    ~ScopedBackend();
    ScopedBackend(const ScopedBackend&) = delete;
    ScopedBackend& operator=(const ScopedBackend&) = delete;

  private:
    Backend previous_;
};

inline Complex dotc(std::span<const Complex> x, std::span<const Complex> y) {
    return kernels().dotc(x.data(), y.data(), x.size());
}

inline Complex dotu(std::span<const Complex> x, std::span<const Complex> y) {
    return kernels().dotu(x.data(), y.data(), x.size());
}

/// The splitmix64 finalizer.
constexpr uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// Top 53 bits of a word as a double in [0,1).
constexpr double to_unit_interval(uint64_t z) {
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace detqm::simd

#endif  // DETQM_SIMD_KERNELS_H
