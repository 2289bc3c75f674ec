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

#include <atomic>
#include <stdexcept>

#include "detqm/simd/kernels.h"

namespace detqm::simd {

#ifndef DETQM_HAVE_AVX2_KERNELS
const KernelTable* avx2_kernels() { return nullptr; }
#endif

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::kScalar:
            return "scalar";
        case Backend::kAvx2:
            return "avx2";
    }
    return "unknown";
}

bool avx2_supported() {
#if defined(DETQM_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported;
#else
    return false;
#endif
}

namespace {

std::atomic<Backend>& current() {
    static std::atomic<Backend> backend{avx2_supported() ? Backend::kAvx2 : Backend::kScalar};
    return backend;
}

}  // namespace

const KernelTable& kernels() {
    if (current().load(std::memory_order_relaxed) == Backend::kAvx2) {
        return *avx2_kernels();
    }
    return scalar_kernels();
}

Backend active_backend() { return current().load(); }

void set_backend(Backend b) {
    if (b == Backend::kAvx2 && !avx2_supported()) {
        throw std::invalid_argument("AVX2 kernels are not available on this machine");
    }
    current().store(b);
}

ScopedBackend::ScopedBackend(Backend b) : previous_(active_backend()) { set_backend(b); }

ScopedBackend::~ScopedBackend() { current().store(previous_); }

}  // namespace detqm::simd
