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

#include "detqm/cli.h"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "detqm/battery.h"
#include "detqm/epr.h"
#include "detqm/errors.h"
#include "detqm/io.h"
#include "detqm/selector.h"
#include "detqm/service/server.h"

namespace detqm::cli {

namespace {

using io::json;

// Sweep points use seed_offset + index * kSweepSeedStride, so their clocks
// never share a tick stream.
constexpr int64_t kSweepSeedStride = int64_t{1} << 32;

class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct ClockFlags {
    std::string scheme = "counter_hash";
    int64_t seed = 0;
    int64_t tick_scale = 1;

    void add_to(CLI::App& app) {
        app.add_option("--scheme", scheme, "Clock scheme: counter_hash or sine_fold")->capture_default_str();
        app.add_option("--seed", seed, "Clock seed offset")->capture_default_str();
        app.add_option("--tick-scale", tick_scale, "Clock tick multiplier (positive)")->capture_default_str();
    }

    PhaseClock clock(int64_t extra_offset = 0) const {
        return PhaseClock::of(parse_scheme(scheme), seed + extra_offset, tick_scale);
    }
};

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

void require_finite(double v, const char* flag) {
    if (!std::isfinite(v)) {
        throw UsageError(std::string(flag) + " must be a finite number of degrees");
    }
}

// ---- epr run ----

struct EprRunFlags {
    double theta1 = 0;
    double theta2 = 0;
    size_t n = 1000;
    int64_t start_tick = 0;
    std::string format = "csv";
    std::string out;
    ClockFlags clock;
};

int epr_run(const EprRunFlags& f, std::ostream& out) {
    require_finite(f.theta1, "--theta1");
    require_finite(f.theta2, "--theta2");
    if (f.n == 0) {
        throw UsageError("--n must be at least 1");
    }
    const PhaseClock clock = f.clock.clock();
    const epr::EprModel model = epr::build_model(epr::degrees_to_radians(f.theta1), epr::degrees_to_radians(f.theta2),
                                                 clock, f.start_tick);
    const epr::CorrelationTrace trace = epr::run_epr(model, clock, f.start_tick, f.n);

    const io::TraceMetadata meta{f.theta1,       f.theta2,     clock.scheme(), clock.seed_offset(),
                                 clock.tick_scale(), f.start_tick, f.n,            epr::kBasisId};
    if (!f.out.empty()) {
        if (f.format == "csv") {
            io::write_text_file(f.out, io::trace_to_csv(meta, trace));
        } else {
            io::write_json_file(f.out, io::trace_to_json(meta, trace));
        }
    }
    const double c = trace.final_correlation();
    const double exact = epr::exact_correlation(model);
    out << "final c:   " << io::format_correlation(c) << "\n"
        << "exact:     " << io::format_correlation(exact) << "\n"
        << "deviation: " << fmt("%.3e", std::abs(c - exact)) << "\n";
    return kExitOk;
}

// ---- epr sweep ----

struct EprSweepFlags {
    std::string deltas;
    double theta1 = 0;
    size_t n = 50000;
    int64_t start_tick = 0;
    unsigned jobs = 0;
    std::string format = "table";
    std::string out;
    ClockFlags clock;
};

struct SweepRow {
    double delta = 0;
    double c = 0;
    double exact = 0;
};

std::vector<double> parse_degree_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
            throw UsageError("--deltas: '" + item + "' is not a number");
        }
        require_finite(v, "--deltas");
        values.push_back(v);
    }
    if (values.empty()) {
        throw UsageError("--deltas needs at least one angle difference");
    }
    return values;
}

int epr_sweep(const EprSweepFlags& f, std::ostream& out) {
    const std::vector<double> deltas = parse_degree_list(f.deltas);
    require_finite(f.theta1, "--theta1");
    if (f.n == 0) {
        throw UsageError("--n must be at least 1");
    }
    f.clock.clock();  // validate before spawning work

    const auto point = [&](size_t i) {
        const PhaseClock clock = f.clock.clock(static_cast<int64_t>(i) * kSweepSeedStride);
        const double theta1 = epr::degrees_to_radians(f.theta1);
        const double theta2 = epr::degrees_to_radians(f.theta1 + deltas[i]);
        const epr::EprModel model = epr::build_model(theta1, theta2, clock, f.start_tick);
        const epr::CorrelationTrace trace = epr::run_epr(model, clock, f.start_tick, f.n);
        return SweepRow{deltas[i], trace.final_correlation(), epr::exact_correlation(model)};
    };

    const size_t jobs = std::max<size_t>(1, f.jobs != 0 ? f.jobs : std::thread::hardware_concurrency());
    std::vector<SweepRow> rows(deltas.size());
    for (size_t begin = 0; begin < rows.size(); begin += jobs) {
        const size_t end = std::min(rows.size(), begin + jobs);
        std::vector<std::future<SweepRow>> pending;
        for (size_t i = begin; i < end; ++i) {
            pending.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async, point, i));
        }
        for (size_t i = begin; i < end; ++i) {
            rows[i] = pending[i - begin].get();
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.delta < b.delta; });

    const PhaseClock base = f.clock.clock();
    json doc = {{"scheme", std::string(scheme_name(base.scheme()))},
                {"seed_offset", base.seed_offset()},
                {"seed_stride", kSweepSeedStride},
                {"tick_scale", base.tick_scale()},
                {"start_tick", f.start_tick},
                {"n", f.n},
                {"theta1_deg", f.theta1},
                {"basis", epr::kBasisId},
                {"rows", json::array()}};
    for (const SweepRow& r : rows) {
        doc["rows"].push_back({{"delta_deg", r.delta},
                               {"c", r.c},
                               {"exact", r.exact},
                               {"deviation", std::abs(r.c - r.exact)}});
    }
    if (!f.out.empty()) {
        io::write_json_file(f.out, doc);
    }
    if (f.format == "json") {
        out << doc.dump(2) << "\n";
    } else {
        out << "delta_deg        c_n            exact          deviation\n";
        for (const SweepRow& r : rows) {
            out << fmt("%-16g", r.delta) << fmt("%-15.9f", r.c) << fmt("%-15.9f", r.exact)
                << fmt("%.3e", std::abs(r.c - r.exact)) << "\n";
        }
    }
    return kExitOk;
}

// ---- epr export ----

struct EprExportFlags {
    double theta1 = 0;
    double theta2 = 0;
    int64_t tick = 0;
    std::string dir = ".";
    ClockFlags clock;
};

int epr_export(const EprExportFlags& f, std::ostream& out) {
    require_finite(f.theta1, "--theta1");
    require_finite(f.theta2, "--theta2");
    const epr::EprModel model = epr::build_model(epr::degrees_to_radians(f.theta1), epr::degrees_to_radians(f.theta2),
                                                 f.clock.clock(), f.tick);
    const std::filesystem::path dir(f.dir);
    const auto observable = [](const Observable& o) {
        return json{{"dim", o.dim()}, {"matrix", io::matrix_to_json(o.matrix())}};
    };
    io::write_json_file(dir / "singlet.json", io::state_to_json(model.singlet));
    io::write_json_file(dir / "observable_a.json", observable(model.a));
    io::write_json_file(dir / "observable_b.json", observable(model.b));
    out << "wrote singlet.json, observable_a.json, observable_b.json to " << dir.string() << "\n";
    return kExitOk;
}

// ---- measure ----

struct MeasureFlags {
    std::string state;
    std::vector<std::string> observables;
    int64_t tick = 0;
    bool rebirth = false;
    std::string out;
    ClockFlags clock;
};

int measure(const MeasureFlags& f, std::ostream& out) {
    const PhaseClock clock = f.clock.clock();
    StateVector psi = io::state_from_json(io::read_json_file(f.state));
    std::vector<Observable> parts;
    for (const std::string& path : f.observables) {
        parts.push_back(io::observable_from_json(io::read_json_file(path)));
    }
    const CompositeObservable composite = compose(std::move(parts));
    if (composite.dim() != psi.dim()) {
        throw DimensionMismatch("state has dimension " + std::to_string(psi.dim()) + ", observables have " +
                                std::to_string(composite.dim()));
    }
    const SelectorBasis basis = SelectorBasis::standard(psi.dim());
    if (f.rebirth) {
        psi = birth_phase(psi.amplitudes(), clock, f.tick, basis);
    }
    const Outcome outcome = mu(composite, psi, basis);
    const MeasurementRecord record = collapse(composite, psi, outcome, clock, f.tick, basis);
    if (!f.out.empty()) {
        io::write_json_file(f.out, io::state_to_json(record.collapsed));
    }
    out << io::record_to_json(record).dump() << "\n";
    return kExitOk;
}

// ---- rng test ----

struct RngFlags {
    size_t n = 1000000;
    double alpha = 0.001;
    int64_t start_tick = 0;
    double constant_value = 0.5;
    std::string format = "table";
    std::string out;
    ClockFlags clock;
};

int rng_test(const RngFlags& f, std::ostream& out) {
    if (f.n < kMinBatterySamples) {
        throw UsageError("--n must be at least " + std::to_string(kMinBatterySamples));
    }
    const ClockScheme scheme = parse_scheme(f.clock.scheme, true);
    const PhaseClock clock = scheme == ClockScheme::kConstant ? PhaseClock::constant(f.constant_value)
                                                              : PhaseClock::of(scheme, f.clock.seed, f.clock.tick_scale);
    const BatteryReport report = run_battery(clock, f.start_tick, f.n, f.alpha);

    json doc = {{"scheme", std::string(scheme_name(scheme))},
                {"seed_offset", clock.seed_offset()},
                {"tick_scale", clock.tick_scale()},
                {"start_tick", f.start_tick},
                {"n", report.n},
                {"alpha", report.alpha},
                {"all_passed", report.all_passed()},
                {"tests", json::array()}};
    for (const BatteryTest& t : report.tests) {
        doc["tests"].push_back(
            {{"name", t.name}, {"statistic", t.statistic}, {"p_value", t.p_value}, {"passed", t.passed}});
    }
    if (!f.out.empty()) {
        io::write_json_file(f.out, doc);
    }
    if (f.format == "json") {
        out << doc.dump(2) << "\n";
    } else {
        out << "test          statistic        p-value      result\n";
        for (const BatteryTest& t : report.tests) {
            char line[128];
            std::snprintf(line, sizeof(line), "%-13s %-16.6g %-12.6g %s\n", t.name.c_str(), t.statistic, t.p_value,
                          t.passed ? "PASS" : "FAIL");
            out << line;
        }
        out << (report.all_passed() ? "all tests passed" : "battery FAILED") << " (n = " << report.n
            << ", alpha = " << report.alpha << ")\n";
    }
    return report.all_passed() ? kExitOk : kExitTestFailed;
}

// ---- serve ----

struct ServeFlags {
    std::string host = "127.0.0.1";
    uint16_t port = 8080;
    size_t max_sessions = 64;
    std::string static_dir;
};

int serve(const ServeFlags& f, std::ostream& out) {
    service::Server server({f.host, f.port, f.max_sessions, f.static_dir});
    server.stop_on_signals();
    out << "listening on http://" << f.host << ":" << server.port() << " (WebSocket at /ws)" << std::endl;
    server.run();
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Deterministic quantum measurement engine"};
    app.name("detqm");
    app.require_subcommand(1);

    CLI::App* epr_cmd = app.add_subcommand("epr", "Two-spin singlet experiments");
    epr_cmd->require_subcommand(1);

    EprRunFlags run_flags;
    CLI::App* run_cmd = epr_cmd->add_subcommand("run", "Measure a singlet repeatedly and write the trace");
    run_cmd->add_option("--theta1", run_flags.theta1, "First direction (degrees)")->capture_default_str();
    run_cmd->add_option("--theta2", run_flags.theta2, "Second direction (degrees)")->capture_default_str();
    run_cmd->add_option("--n", run_flags.n, "Number of samples")->capture_default_str();
    run_cmd->add_option("--start-tick", run_flags.start_tick, "Clock tick of the first sample")->capture_default_str();
    run_cmd->add_option("--format", run_flags.format, "Trace format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    run_cmd->add_option("--out", run_flags.out, "Trace file");
    run_flags.clock.add_to(*run_cmd);

    EprSweepFlags sweep_flags;
    CLI::App* sweep_cmd = epr_cmd->add_subcommand("sweep", "Final correlation for a list of angle differences");
    sweep_cmd->add_option("--deltas", sweep_flags.deltas, "Angle differences (degrees), comma separated")
        ->required();
    sweep_cmd->add_option("--theta1", sweep_flags.theta1, "First direction (degrees)")->capture_default_str();
    sweep_cmd->add_option("--n", sweep_flags.n, "Samples per point")->capture_default_str();
    sweep_cmd->add_option("--start-tick", sweep_flags.start_tick, "Clock tick of the first sample")
        ->capture_default_str();
    sweep_cmd->add_option("--jobs", sweep_flags.jobs, "Points computed in parallel (0: one per core)")
        ->capture_default_str();
    sweep_cmd->add_option("--format", sweep_flags.format, "Standard output format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep_flags.out, "JSON results file");
    sweep_flags.clock.add_to(*sweep_cmd);

    EprExportFlags export_flags;
    CLI::App* export_cmd = epr_cmd->add_subcommand("export", "Write the singlet and both spin observables as JSON");
    export_cmd->add_option("--theta1", export_flags.theta1, "First direction (degrees)")->capture_default_str();
    export_cmd->add_option("--theta2", export_flags.theta2, "Second direction (degrees)")->capture_default_str();
    export_cmd->add_option("--tick", export_flags.tick, "Birth tick of the singlet")->capture_default_str();
    export_cmd->add_option("--dir", export_flags.dir, "Output directory")->capture_default_str();
    export_flags.clock.add_to(*export_cmd);

    MeasureFlags measure_flags;
    CLI::App* measure_cmd = app.add_subcommand("measure", "Measure a state against commuting observables");
    measure_cmd->add_option("--state", measure_flags.state, "State JSON file")->required();
    measure_cmd->add_option("--observable", measure_flags.observables, "Observable JSON file (repeatable, in order)")
        ->required();
    measure_cmd->add_option("--tick", measure_flags.tick, "Clock tick of the measurement")->capture_default_str();
    measure_cmd->add_flag("--rebirth", measure_flags.rebirth, "Re-phase the state to the clock at --tick first");
    measure_cmd->add_option("--out", measure_flags.out, "Collapsed state file");
    measure_flags.clock.add_to(*measure_cmd);

    CLI::App* rng_cmd = app.add_subcommand("rng", "Clock qualification");
    rng_cmd->require_subcommand(1);
    RngFlags rng_flags;
    CLI::App* rng_test_cmd = rng_cmd->add_subcommand("test", "Run the five-test uniformity battery on a clock");
    rng_test_cmd->add_option("--n", rng_flags.n, "Number of clock values")->capture_default_str();
    rng_test_cmd->add_option("--alpha", rng_flags.alpha, "Significance level")->capture_default_str();
    rng_test_cmd->add_option("--start-tick", rng_flags.start_tick, "First tick")->capture_default_str();
    rng_test_cmd->add_option("--constant-value", rng_flags.constant_value, "Value of the constant scheme")
        ->capture_default_str();
    rng_test_cmd->add_option("--format", rng_flags.format, "Standard output format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();
    rng_test_cmd->add_option("--out", rng_flags.out, "JSON report file");
    rng_flags.clock.add_to(*rng_test_cmd);

    ServeFlags serve_flags;
    CLI::App* serve_cmd = app.add_subcommand("serve", "Run the streaming service");
    serve_cmd->add_option("--host", serve_flags.host, "Listen address")->capture_default_str();
    serve_cmd->add_option("--port", serve_flags.port, "Listen port (0: ephemeral)")->capture_default_str();
    serve_cmd->add_option("--max-sessions", serve_flags.max_sessions, "Concurrent session limit")
        ->capture_default_str();
    serve_cmd->add_option("--static-dir", serve_flags.static_dir, "Directory of the UI bundle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run_cmd->parsed()) return epr_run(run_flags, out);
        if (sweep_cmd->parsed()) return epr_sweep(sweep_flags, out);
        if (export_cmd->parsed()) return epr_export(export_flags, out);
        if (measure_cmd->parsed()) return measure(measure_flags, out);
        if (rng_test_cmd->parsed()) return rng_test(rng_flags, out);
        if (serve_cmd->parsed()) return serve(serve_flags, out);
        err << "no command given\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitModel;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitModel;
    }
}

}  // namespace detqm::cli
