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

#include "detqm/service/server.h"

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <chrono>
#include <deque>
#include <fstream>
#include <sstream>

#include "detqm/errors.h"

namespace detqm::service {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

// A client that stops reading should not make the server buffer without
// bound; emission pauses instead, so the stream itself is unchanged.
constexpr size_t kMaxQueuedFrames = 1024;

constexpr const char* kBuiltinIndex =
    "<!doctype html><title>detqm</title>"
    "<p>detqm service. WebSocket endpoint: <code>/ws</code>. Health: <code>/health</code>.</p>\n";

struct Context {
    SessionRegistry registry;
    std::filesystem::path static_dir;
};

std::string mime_type(const std::filesystem::path& p) {
    const std::string ext = p.extension().string();
    if (ext == ".html" || ext == ".htm") return "text/html; charset=utf-8";
    if (ext == ".js" || ext == ".mjs") return "text/javascript";
    if (ext == ".css") return "text/css";
    if (ext == ".json" || ext == ".map") return "application/json";
    if (ext == ".svg") return "image/svg+xml";
    if (ext == ".png") return "image/png";
    if (ext == ".ico") return "image/x-icon";
    if (ext == ".wasm") return "application/wasm";
    return "application/octet-stream";
}

std::string_view path_of(beast::string_view target) {
    const std::string_view t(target.data(), target.size());
    return t.substr(0, t.find('?'));
}

// Maps a request path to a file under root, or nothing for paths that try
// to leave it.
std::optional<std::filesystem::path> resolve_static(const std::filesystem::path& root, std::string_view path) {
    if (path.empty() || path.front() != '/' || path.find('\\') != std::string_view::npos ||
        path.find('\0') != std::string_view::npos) {
        return std::nullopt;
    }
    std::string rel(path.substr(1));
    if (rel.empty() || rel.back() == '/') {
        rel += "index.html";
    }
    const std::filesystem::path candidate = std::filesystem::path(rel).lexically_normal();
    for (const auto& part : candidate) {
        if (part == "..") {
            return std::nullopt;
        }
    }
    return root / candidate;
}

http::response<http::string_body> handle_http(Context& ctx, const http::request<http::string_body>& req) {
    const auto respond = [&](http::status status, const std::string& type, std::string body) {
        http::response<http::string_body> res(status, req.version());
        res.set(http::field::server, "detqm");
        res.set(http::field::content_type, type);
        res.keep_alive(req.keep_alive());
        res.body() = std::move(body);
        res.prepare_payload();
        if (req.method() == http::verb::head) {
            res.body().clear();
        }
        return res;
    };

    if (req.method() != http::verb::get && req.method() != http::verb::head) {
        auto res = respond(http::status::method_not_allowed, "text/plain", "method not allowed\n");
        res.set(http::field::allow, "GET, HEAD");
        return res;
    }
    const std::string_view path = path_of(req.target());
    if (path == "/health") {
        const json body = {{"status", "ok"},
                           {"sessions", ctx.registry.active()},
                           {"max_sessions", ctx.registry.capacity()}};
        return respond(http::status::ok, "application/json", body.dump());
    }
    if (ctx.static_dir.empty()) {
        if (path == "/" || path == "/index.html") {
            return respond(http::status::ok, "text/html; charset=utf-8", kBuiltinIndex);
        }
        return respond(http::status::not_found, "text/plain", "not found\n");
    }
    const auto file = resolve_static(ctx.static_dir, path);
    if (!file) {
        return respond(http::status::bad_request, "text/plain", "bad path\n");
    }
    std::ifstream in(*file, std::ios::binary);
    if (!in || std::filesystem::is_directory(*file)) {
        return respond(http::status::not_found, "text/plain", "not found\n");
    }
    std::ostringstream body;
    body << in.rdbuf();
    return respond(http::status::ok, mime_type(*file), body.str());
}

class WsSession : public std::enable_shared_from_this<WsSession> {
  public:
    WsSession(tcp::socket&& socket, Context& ctx)
        : ws_(std::move(socket)), channel_(ctx.registry), timer_(ws_.get_executor()) {}

    void run(http::request<http::string_body> req) {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.text(true);
        ws_.async_accept(req, beast::bind_front_handler(&WsSession::on_accept, shared_from_this()));
    }

  private:
    websocket::stream<beast::tcp_stream> ws_;
    beast::flat_buffer buffer_;
    Channel channel_;
    net::steady_timer timer_;
    std::deque<std::string> outbox_;
    bool timer_armed_ = false;
    bool closed_ = false;

    void on_accept(beast::error_code ec) {
        if (ec) {
            return;
        }
        do_read();
    }

    void do_read() { ws_.async_read(buffer_, beast::bind_front_handler(&WsSession::on_read, shared_from_this())); }

    void on_read(beast::error_code ec, size_t) {
        if (ec) {
            closed_ = true;
            timer_.cancel();
            return;
        }
        const std::string text = beast::buffers_to_string(buffer_.data());
        buffer_.consume(buffer_.size());
        for (const json& event : channel_.on_message(text)) {
            send(event.dump());
        }
        arm_timer();
        do_read();
    }

    void arm_timer() {
        const EprSession* s = channel_.session();
        if (timer_armed_ || closed_ || s == nullptr) {
            return;
        }
        timer_armed_ = true;
        timer_.expires_after(std::chrono::duration_cast<net::steady_timer::duration>(
            std::chrono::duration<double>(1.0 / s->rate())));
        timer_.async_wait(beast::bind_front_handler(&WsSession::on_timer, shared_from_this()));
    }

    void on_timer(beast::error_code ec) {
        timer_armed_ = false;
        if (ec || closed_) {
            return;
        }
        if (outbox_.size() < kMaxQueuedFrames) {
            if (auto event = channel_.on_timer()) {
                send(event->dump());
            }
        }
        arm_timer();
    }

    void send(std::string frame) {
        outbox_.push_back(std::move(frame));
        if (outbox_.size() == 1) {
            write_front();
        }
    }

    void write_front() {
        ws_.async_write(net::buffer(outbox_.front()),
                        beast::bind_front_handler(&WsSession::on_write, shared_from_this()));
    }

    void on_write(beast::error_code ec, size_t) {
        if (ec) {
            closed_ = true;
            timer_.cancel();
            return;
        }
        outbox_.pop_front();
        if (!outbox_.empty()) {
            write_front();
        }
    }
};

class HttpSession : public std::enable_shared_from_this<HttpSession> {
  public:
    HttpSession(tcp::socket&& socket, Context& ctx) : stream_(std::move(socket)), ctx_(ctx) {}

    void run() { do_read(); }

  private:
    beast::tcp_stream stream_;
    beast::flat_buffer buffer_;
    Context& ctx_;
    http::request<http::string_body> req_;
    std::shared_ptr<http::response<http::string_body>> res_;

    void do_read() {
        req_ = {};
        stream_.expires_after(std::chrono::seconds(30));
        http::async_read(stream_, buffer_, req_, beast::bind_front_handler(&HttpSession::on_read, shared_from_this()));
    }

    void on_read(beast::error_code ec, size_t) {
        if (ec == http::error::end_of_stream) {
            close();
            return;
        }
        if (ec) {
            return;
        }
        if (websocket::is_upgrade(req_) && path_of(req_.target()) == "/ws") {
            stream_.expires_never();
            std::make_shared<WsSession>(stream_.release_socket(), ctx_)->run(std::move(req_));
            return;
        }
        res_ = std::make_shared<http::response<http::string_body>>(handle_http(ctx_, req_));
        http::async_write(stream_, *res_, beast::bind_front_handler(&HttpSession::on_write, shared_from_this()));
    }

    void on_write(beast::error_code ec, size_t) {
        if (ec) {
            return;
        }
        if (res_->need_eof()) {
            close();
            return;
        }
        do_read();
    }

    void close() {
        beast::error_code ignored;
        stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
    }
};

}  // namespace

struct Server::Impl {
    net::io_context ioc{1};
    tcp::acceptor acceptor{ioc};
    Context ctx;
    std::unique_ptr<net::signal_set> signals;

    explicit Impl(const ServerOptions& o) : ctx{SessionRegistry(o.max_sessions), o.static_dir} {}

    void accept() {
        acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
            if (ec == net::error::operation_aborted) {
                return;
            }
            if (!ec) {
                std::make_shared<HttpSession>(std::move(socket), ctx)->run();
            }
            accept();
        });
    }
};

Server::Server(ServerOptions options) {
    if (options.max_sessions == 0) {
        throw std::invalid_argument("max_sessions must be positive");
    }
    impl_ = std::make_unique<Impl>(options);
    beast::error_code ec;
    const auto address = net::ip::make_address(options.host, ec);
    if (ec) {
        throw std::invalid_argument("bad listen address '" + options.host + "'");
    }
    const tcp::endpoint endpoint(address, options.port);
    auto& a = impl_->acceptor;
    if (a.open(endpoint.protocol(), ec); !ec) a.set_option(net::socket_base::reuse_address(true), ec);
    if (!ec) a.bind(endpoint, ec);
    if (!ec) a.listen(net::socket_base::max_listen_connections, ec);
    if (ec) {
        throw IoError("cannot listen on " + options.host + ":" + std::to_string(options.port) + ": " + ec.message());
    }
    impl_->accept();
}

Server::~Server() = default;

uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

const SessionRegistry& Server::registry() const { return impl_->ctx.registry; }

void Server::run() { impl_->ioc.run(); }

void Server::stop() {
    net::post(impl_->ioc, [this] {
        beast::error_code ignored;
        impl_->acceptor.close(ignored);
        impl_->ioc.stop();
    });
}

void Server::stop_on_signals() {
    impl_->signals = std::make_unique<net::signal_set>(impl_->ioc, SIGINT, SIGTERM);
    impl_->signals->async_wait([this](beast::error_code, int) { stop(); });
}

}  // namespace detqm::service
