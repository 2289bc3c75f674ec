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

#ifndef DETQM_SERVICE_SESSION_H
#define DETQM_SERVICE_SESSION_H

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "detqm/epr.h"
#include "detqm/randomness.h"

namespace detqm::service {

using nlohmann::json;

inline constexpr double kMinRate = 1;
inline constexpr double kMaxRate = 1000;

struct SessionConfig {
    int64_t seed = 0;
    double theta1_deg = 0;
    double theta2_deg = 0;
    double rate = 10;  // samples per second
};

/// One streaming EPR experiment. The clock is counter_hash keyed by the seed;
/// every sample consumes one tick, and ticks keep increasing across angle
/// changes while the step count restarts.
///
/// Events:
///   {"type": "sample", "step", "tick", "a", "b", "c", "red": [x, y], "green": [x, y], "exact"}
///   {"type": "reset", "exact", "theta1_deg", "theta2_deg", "tick"}
///   {"type": "snapshot", "session", "seed", "theta1_deg", "theta2_deg", "rate", "paused",
///    "tick", "step", "c", "exact", "window"}
class EprSession {
  public:
    /// Throws std::invalid_argument for a rate outside [1, 1000] or
    /// non-finite angles.
    EprSession(uint64_t id, const SessionConfig& config);

    uint64_t id() const { return id_; }
    double rate() const { return rate_; }
    bool paused() const { return paused_; }
    int64_t next_tick() const { return next_tick_; }
    double exact() const { return exact_; }

    json snapshot() const;
    /// Rebuilds the model and clears the trace, even for unchanged angles.
    json set_angles(double theta1_deg, double theta2_deg);
    void pause() { paused_ = true; }
    void resume() { paused_ = false; }
    /// Measures at the next tick, regardless of the paused flag.
    json emit_sample();

  private:
    uint64_t id_;
    int64_t seed_;
    double rate_;
    bool paused_ = false;
    double theta1_deg_ = 0;
    double theta2_deg_ = 0;
    PhaseClock clock_;
    epr::EprModel model_;
    double exact_ = 0;
    int64_t next_tick_ = 0;
    size_t step_ = 0;
    epr::RunningCorrelation running_;
    std::vector<double> window_;  // ring of the last kWindowSize values
    size_t window_head_ = 0;

    std::vector<double> window_in_order() const;
};

/// Hands out session ids and enforces the session limit. Thread-safe.
class SessionRegistry {
  public:
    explicit SessionRegistry(size_t capacity) : capacity_(capacity) {}

    /// A fresh id, or nothing when capacity sessions are open.
    std::optional<uint64_t> acquire();
    void release();
    size_t active() const;
    size_t capacity() const { return capacity_; }

  private:
    mutable std::mutex mu_;
    size_t capacity_;
    size_t active_ = 0;
    uint64_t next_id_ = 1;
};

/// The protocol state of one client connection: at most one session.
///
/// Client messages:
///   {"type": "open", "seed", "theta1_deg", "theta2_deg", "rate"}
///   {"type": "set_angles", "theta1_deg", "theta2_deg"}
///   {"type": "pause"}, {"type": "resume"}
/// Any message may carry "session"; a value other than the open session's id
/// is answered with an error event.
class Channel {
  public:
    explicit Channel(SessionRegistry& registry) : registry_(&registry) {}
    ~Channel();
    Channel(const Channel&) = delete;
    Channel& operator=(const Channel&) = delete;

    /// Outgoing events, in order.
    std::vector<json> on_message(std::string_view text);
    /// A sample event when a session is open and running.
    std::optional<json> on_timer();

    const EprSession* session() const { return session_ ? &*session_ : nullptr; }

  private:
    SessionRegistry* registry_;
    std::optional<EprSession> session_;

    std::vector<json> handle(const json& msg);
    void close();
};

json error_event(const std::string& message);

}  // namespace detqm::service

#endif  // DETQM_SERVICE_SESSION_H
