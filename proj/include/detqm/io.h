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

#ifndef DETQM_IO_H
#define DETQM_IO_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "detqm/epr.h"
#include "detqm/linalg.h"
#include "detqm/randomness.h"
#include "detqm/selector.h"
#include "detqm/spectral.h"

// File formats. Complex numbers are [re, im] pairs throughout.
//
//   observable: {"dim": n, "matrix": [[[re, im], ...], ...]}
//   state:      {"dim": n, "amplitudes": [[re, im], ...], "birth_tick": t}
//   record:     {"tick": t, "outcome": [...], "probability": p}
//
// Schema violations raise IoError; well-formed files describing an invalid
// model (a non-Hermitian matrix, a state of the wrong norm) raise ModelError.
namespace detqm::io {

using nlohmann::json;

/// A state file may be off unit norm by this much; it is renormalized on load.
inline constexpr double kStateNormTol = 1e-9;

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

/// The spectral data is always recomputed from the matrix.
Observable observable_from_json(const json& j);

json state_to_json(const StateVector& psi);
StateVector state_from_json(const json& j);

json record_to_json(const MeasurementRecord& r);

json read_json_file(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Everything needed to replay a trace.
struct TraceMetadata {
    double theta1_deg = 0;
    double theta2_deg = 0;
    ClockScheme scheme = ClockScheme::kCounterHash;
    int64_t seed_offset = 0;
    int64_t tick_scale = 1;
    int64_t start_tick = 0;
    size_t n = 0;
    std::string basis = epr::kBasisId;
};

json metadata_to_json(const TraceMetadata& m);

/// "# <metadata json>" line, then "step,a,b,c" and one row per sample.
std::string trace_to_csv(const TraceMetadata& meta, const epr::CorrelationTrace& trace);
/// {"metadata": ..., "samples": [{"step", "a", "b", "c"}, ...]}
json trace_to_json(const TraceMetadata& meta, const epr::CorrelationTrace& trace);

/// %.12g
std::string format_correlation(double c);

}  // namespace detqm::io

#endif  // DETQM_IO_H
