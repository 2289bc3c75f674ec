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

#include "detqm/service/session.h"

#include <cmath>
#include <stdexcept>

namespace detqm::service {

namespace {

json point(const epr::Point& p) { return json::array({p.x, p.y}); }

double required_number(const json& msg, const char* key) {
    const auto it = msg.find(key);
    if (it == msg.end() || !it->is_number()) {
        throw std::invalid_argument(std::string("\"") + key + "\" must be a number");
    }
    return it->get<double>();
}

}  // namespace

json error_event(const std::string& message) { return {{"type", "error"}, {"message", message}}; }

EprSession::EprSession(uint64_t id, const SessionConfig& config)
    : id_(id),
      seed_(config.seed),
      rate_(config.rate),
      clock_(PhaseClock::counter_hash(config.seed)),
      model_(epr::build_model(epr::degrees_to_radians(config.theta1_deg), epr::degrees_to_radians(config.theta2_deg),
                              clock_, 0)) {
    if (!(config.rate >= kMinRate && config.rate <= kMaxRate)) {
        throw std::invalid_argument("rate must lie in [1, 1000] samples per second");
    }
    set_angles(config.theta1_deg, config.theta2_deg);
}

json EprSession::set_angles(double theta1_deg, double theta2_deg) {
    if (!std::isfinite(theta1_deg) || !std::isfinite(theta2_deg)) {
        throw std::invalid_argument("angles must be finite");
    }
    model_ = epr::build_model(epr::degrees_to_radians(theta1_deg), epr::degrees_to_radians(theta2_deg), clock_,
                              next_tick_);
    theta1_deg_ = theta1_deg;
    theta2_deg_ = theta2_deg;
    exact_ = epr::exact_correlation(model_);
    step_ = 0;
    running_.reset();
    window_.clear();
    window_head_ = 0;
    return {{"type", "reset"},
            {"exact", exact_},
            {"theta1_deg", theta1_deg},
            {"theta2_deg", theta2_deg},
            {"tick", next_tick_}};
}

json EprSession::emit_sample() {
    const int64_t tick = next_tick_++;
    const epr::Sample s = epr::measure_once(model_, clock_, tick);
    ++step_;
    running_.add(s.a, s.b);
    const double c = running_.value();
    if (window_.size() < epr::kWindowSize) {
        window_.push_back(c);
    } else {
        window_[window_head_] = c;
        window_head_ = (window_head_ + 1) % epr::kWindowSize;
    }
    const epr::ArrowPair arrows = epr::arrow_endpoints(s, model_.theta1, model_.theta2);
    return {{"type", "sample"}, {"step", step_},           {"tick", tick},
            {"a", s.a},         {"b", s.b},                {"c", c},
            {"red", point(arrows.red)}, {"green", point(arrows.green)}, {"exact", exact_}};
}

std::vector<double> EprSession::window_in_order() const {
    std::vector<double> out;
    out.reserve(window_.size());
    for (size_t i = 0; i < window_.size(); ++i) {
        out.push_back(window_[(window_head_ + i) % window_.size()]);
    }
    return out;
}

json EprSession::snapshot() const {
    return {{"type", "snapshot"},
            {"session", id_},
            {"seed", seed_},
            {"theta1_deg", theta1_deg_},
            {"theta2_deg", theta2_deg_},
            {"rate", rate_},
            {"paused", paused_},
            {"tick", next_tick_},
            {"step", step_},
            {"c", running_.value()},
            {"exact", exact_},
            {"window", window_in_order()}};
}

std::optional<uint64_t> SessionRegistry::acquire() {
    std::lock_guard lock(mu_);
    if (active_ >= capacity_) {
        return std::nullopt;
    }
    ++active_;
    return next_id_++;
}

void SessionRegistry::release() {
    std::lock_guard lock(mu_);
    if (active_ > 0) {
        --active_;
    }
}

size_t SessionRegistry::active() const {
    std::lock_guard lock(mu_);
    return active_;
}

Channel::~Channel() { close(); }

void Channel::close() {
    if (session_) {
        session_.reset();
        registry_->release();
    }
}

std::vector<json> Channel::on_message(std::string_view text) {
    json msg;
    try {
        msg = json::parse(text);
    } catch (const json::exception&) {
        return {error_event("message is not valid JSON")};
    }
    if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
        return {error_event("message needs a string \"type\"")};
    }
    try {
        return handle(msg);
    } catch (const std::exception& e) {
        return {error_event(e.what())};
    }
}

std::vector<json> Channel::handle(const json& msg) {
    const std::string type = msg["type"].get<std::string>();
    if (type == "open") {
        SessionConfig config;
        if (const auto it = msg.find("seed"); it != msg.end()) {
            if (!it->is_number_integer()) {
                return {error_event("\"seed\" must be an integer")};
            }
            config.seed = it->get<int64_t>();
        }
        config.theta1_deg = required_number(msg, "theta1_deg");
        config.theta2_deg = required_number(msg, "theta2_deg");
        if (msg.contains("rate")) {
            config.rate = required_number(msg, "rate");
        }
        close();
        const auto id = registry_->acquire();
        if (!id) {
            return {error_event("session capacity exceeded (" + std::to_string(registry_->capacity()) + ")")};
        }
        try {
            session_.emplace(*id, config);
        } catch (...) {
            registry_->release();
            throw;
        }
        return {session_->snapshot()};
    }

    if (!session_) {
        return {error_event("no open session")};
    }
    if (const auto it = msg.find("session"); it != msg.end()) {
        if (!it->is_number_unsigned() || it->get<uint64_t>() != session_->id()) {
            return {error_event("unknown session " + it->dump())};
        }
    }
    if (type == "set_angles") {
        return {session_->set_angles(required_number(msg, "theta1_deg"), required_number(msg, "theta2_deg"))};
    }
    if (type == "pause") {
        session_->pause();
        return {session_->snapshot()};
    }
    if (type == "resume") {
        session_->resume();
        return {session_->snapshot()};
    }
    return {error_event("unknown message type \"" + type + "\"")};
}

std::optional<json> Channel::on_timer() {
    if (!session_ || session_->paused()) {
        return std::nullopt;
    }
    return session_->emit_sample();
}

}  // namespace detqm::service
