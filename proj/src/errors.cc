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

#include "detqm/errors.h"

#include <cstdio>

namespace detqm {

namespace {

std::string describe_commutator(size_t first, size_t second, double norm) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "observables %zu and %zu do not commute (max |[P, Q]| = %.3e)", first, second,
                  norm);
    return buf;
}

}  // namespace

NonCommutingError::NonCommutingError(size_t first_part, size_t second_part, double commutator_norm)
    : ModelError(describe_commutator(first_part, second_part, commutator_norm)),
      first_part_(first_part),
      second_part_(second_part),
      commutator_norm_(commutator_norm) {}

}  // namespace detqm
