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

#include "detqm/io.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "detqm/errors.h"

namespace detqm::io {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw IoError("malformed file: " + what); }

size_t read_dim(const json& j) {
    if (!j.is_object()) {
        schema_error("expected a JSON object");
    }
    const auto it = j.find("dim");
    if (it == j.end() || !it->is_number_integer() || it->get<int64_t>() <= 0) {
        schema_error("\"dim\" must be a positive integer");
    }
    return it->get<size_t>();
}

const json& require_array(const json& j, const char* key, size_t size) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_array()) {
        schema_error(std::string("\"") + key + "\" must be an array");
    }
    if (it->size() != size) {
        schema_error(std::string("\"") + key + "\" has " + std::to_string(it->size()) + " entries, expected " +
                     std::to_string(size));
    }
    return *it;
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        schema_error("complex numbers are written as [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Complex z : m.row(r)) {
            row.push_back(complex_to_json(z));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
    const size_t dim = read_dim(j);
    const json& rows = require_array(j, "matrix", dim);
    std::vector<Complex> entries;
    entries.reserve(dim * dim);
    for (const json& row : rows) {
        if (!row.is_array() || row.size() != dim) {
            schema_error("every matrix row must have " + std::to_string(dim) + " entries");
        }
        for (const json& z : row) {
            entries.push_back(complex_from_json(z));
        }
    }
    return ComplexMatrix(dim, dim, std::move(entries));
}

Observable observable_from_json(const json& j) {
    const ComplexMatrix m = matrix_from_json(j);
    const Observable raw = spectral_decompose(m);
    // Eigenvalues that are decimal numbers up to roundoff (0.5 computed as
    // 0.4999999999999999) are reported as those numbers.
    std::vector<double> clean;
    for (double v : raw.spectrum()) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        const double r = std::strtod(buf, nullptr);
        if (std::abs(r - v) > 1e-12 * std::max(1.0, std::abs(v))) {
            return raw;
        }
        clean.push_back(r);
    }
    return spectral_decompose(m, kDefaultDegeneracyTol, clean);
}

json state_to_json(const StateVector& psi) {
    json amps = json::array();
    for (Complex z : psi.amplitudes()) {
        amps.push_back(complex_to_json(z));
    }
    return {{"dim", psi.dim()}, {"amplitudes", std::move(amps)}, {"birth_tick", psi.birth_tick()}};
}

StateVector state_from_json(const json& j) {
    const size_t dim = read_dim(j);
    const json& amps = require_array(j, "amplitudes", dim);
    int64_t birth_tick = 0;
    if (const auto it = j.find("birth_tick"); it != j.end()) {
        if (!it->is_number_integer()) {
            schema_error("\"birth_tick\" must be an integer");
        }
        birth_tick = it->get<int64_t>();
    }
    ComplexVector v;
    v.reserve(dim);
    for (const json& z : amps) {
        v.push_back(complex_from_json(z));
    }
    const double n = norm(v);
    if (!(std::abs(n - 1.0) <= kStateNormTol)) {
        throw ModelError("state has norm " + std::to_string(n) + "; expected 1");
    }
    return normalize(v, birth_tick);
}

json record_to_json(const MeasurementRecord& r) {
    return {{"tick", r.tick}, {"outcome", r.outcome}, {"probability", r.probability}};
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

json metadata_to_json(const TraceMetadata& m) {
    return {
        {"theta1_deg", m.theta1_deg},
        {"theta2_deg", m.theta2_deg},
        {"theta1_rad", epr::degrees_to_radians(m.theta1_deg)},
        {"theta2_rad", epr::degrees_to_radians(m.theta2_deg)},
        {"scheme", std::string(scheme_name(m.scheme))},
        {"seed_offset", m.seed_offset},
        {"tick_scale", m.tick_scale},
        {"start_tick", m.start_tick},
        {"n", m.n},
        {"basis", m.basis},
        {"tick_convention", "one tick per measurement; step j is measured at tick start_tick + j - 1 on a singlet "
                            "reborn at that tick"},
    };
}

std::string format_correlation(double c) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", c);
    return buf;
}

namespace {

const char* spin_text(double v) { return v > 0 ? "0.5" : "-0.5"; }

}  // namespace

std::string trace_to_csv(const TraceMetadata& meta, const epr::CorrelationTrace& trace) {
    std::ostringstream out;
    out << "# " << metadata_to_json(meta).dump() << "\n";
    out << "step,a,b,c\n";
    const auto samples = trace.samples();
    const auto cs = trace.correlations();
    for (size_t i = 0; i < samples.size(); ++i) {
        out << (i + 1) << ',' << spin_text(samples[i].a) << ',' << spin_text(samples[i].b) << ','
            << format_correlation(cs[i]) << '\n';
    }
    return out.str();
}

json trace_to_json(const TraceMetadata& meta, const epr::CorrelationTrace& trace) {
    json samples = json::array();
    const auto s = trace.samples();
    const auto cs = trace.correlations();
    for (size_t i = 0; i < s.size(); ++i) {
        samples.push_back({{"step", i + 1}, {"a", s[i].a}, {"b", s[i].b}, {"c", cs[i]}});
    }
    return {{"metadata", metadata_to_json(meta)}, {"samples", std::move(samples)}};
}

}  // namespace detqm::io
