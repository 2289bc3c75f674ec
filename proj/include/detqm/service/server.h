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

#ifndef DETQM_SERVICE_SERVER_H
#define DETQM_SERVICE_SERVER_H

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "detqm/service/session.h"

namespace detqm::service {

struct ServerOptions {
    std::string host = "127.0.0.1";
    uint16_t port = 8080;  // 0 picks an ephemeral port
    size_t max_sessions = 64;
    std::filesystem::path static_dir;  // empty: only the built-in index page
};

/// HTTP + WebSocket front end on one io_context thread.
///
///   GET /health    {"status": "ok", "sessions": n, "max_sessions": k}
///   GET /ws        WebSocket upgrade; JSON text frames as described in Channel
///   GET /<path>    files under static_dir, "/" mapping to index.html
class Server {
  public:
    /// Binds and listens immediately; throws IoError when that fails.
    explicit Server(ServerOptions options);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    uint16_t port() const;
    const SessionRegistry& registry() const;

    /// Serves until stop() is called, or SIGINT/SIGTERM when
    /// stop_on_signals() was called first.
    void run();
    /// Safe to call from any thread.
    void stop();
    void stop_on_signals();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace detqm::service

#endif  // DETQM_SERVICE_SERVER_H
