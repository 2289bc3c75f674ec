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

#ifndef DETQM_ERRORS_H
#define DETQM_ERRORS_H

#include <stdexcept>
#include <string>

namespace detqm {

/// Base class of all library errors.
///
/// Precondition violations on plain arguments (out-of-range numbers, counts
/// below a minimum) are reported with std::invalid_argument instead.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The physics model is inconsistent: operands of the wrong size, a
/// non-Hermitian observable, non-commuting parts, a projector family that does
/// not add up to the identity, or a projection that vanishes.
class ModelError : public Error {
  public:
    using Error::Error;
};

class DimensionMismatch : public ModelError {
  public:
    using ModelError::ModelError;
};

class NonCommutingError : public ModelError {
  public:
    NonCommutingError(size_t first_part, size_t second_part, double commutator_norm);

    size_t first_part() const { return first_part_; }
    size_t second_part() const { return second_part_; }
    double commutator_norm() const { return commutator_norm_; }

  private:
    size_t first_part_;
    size_t second_part_;
    double commutator_norm_;
};

/// Normalizing a vector whose norm is below 1e-12.
class VanishingProjection : public ModelError {
  public:
    using ModelError::ModelError;
};

/// File could not be read or written, or its contents do not follow the
/// documented schema.
class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace detqm

#endif  // DETQM_ERRORS_H
