#include "travelkit/tools/server.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>
#include <thread>

#include <httplib.h>

#include "travelkit/tools/tool_hub.hpp"

namespace travelkit::tools {
namespace {

constexpr const char* kJson = "application/json";

void send_error(httplib::Response& res, int status, const std::string& message,
                const std::string& field = "") {
  Json err{{"status", status}, {"message", message}};
  if (!field.empty()) err["field"] = field;
  res.status = status;
  res.set_content(Json{{"error", err}}.dump(), kJson);
}

void send_json(httplib::Response& res, const Json& body) {
  res.status = 200;
  res.set_content(body.dump(), kJson);
}

volatile std::sig_atomic_t g_stop_requested = 0;
extern "C" void on_stop_signal(int) { g_stop_requested = 1; }

}  // namespace

ServerConfig apply_bind_env(ServerConfig config) {
  const char* raw = std::getenv(kBindEnv);
  if (!raw || !*raw) return config;
  const std::string value(raw);
  const auto colon = value.rfind(':');
  if (colon == std::string::npos) throw Error(std::string(kBindEnv) + ": expected host:port");
  try {
    std::size_t used = 0;
    const int port = std::stoi(value.substr(colon + 1), &used);
    if (used != value.size() - colon - 1 || port < 0 || port > 65535) throw std::out_of_range("");
    config.port = port;
  } catch (const std::exception&) {
    throw Error(std::string(kBindEnv) + ": bad port in '" + value + "'");
  }
  if (colon > 0) config.host = value.substr(0, colon);
  return config;
}

struct Server::Impl {
  FixtureStore fixtures;
  ServerConfig config;
  std::ostream* log;
  httplib::Server http;
  std::thread worker;
  int bound_port = -1;

  std::mutex sessions_mu;
  std::map<std::string, agent::SessionTrace> sessions;
  std::atomic<std::uint64_t> next_session{1};
  std::atomic<std::uint64_t> next_request{1};
  std::mutex log_mu;

  Impl(FixtureStore f, ServerConfig c, std::ostream* l)
      : fixtures(std::move(f)), config(std::move(c)), log(l) {
    routes();
  }

  std::optional<agent::SessionTrace> lookup(const std::string& id) {
    std::lock_guard lock(sessions_mu);
    auto it = sessions.find(id);
    if (it == sessions.end()) return std::nullopt;
    return it->second;
  }

  static std::optional<Json> parse_body(const httplib::Request& req, httplib::Response& res) {
    try {
      Json body = Json::parse(req.body);
      if (!body.is_object()) {
        send_error(res, 400, "body must be a JSON object");
        return std::nullopt;
      }
      return body;
    } catch (const Json::parse_error& e) {
      send_error(res, 400, std::string("malformed JSON: ") + e.what());
      return std::nullopt;
    }
  }

  void routes() {
    http.Get("/tools/health", [this](const httplib::Request&, httplib::Response& res) {
      send_json(res, Json{{"status", "ok"},
                          {"pois", fixtures.pois().size()},
                          {"cities", fixtures.cities()}});
    });

    http.Post("/tools/call", [this](const httplib::Request& req, httplib::Response& res) {
      auto body = parse_body(req, res);
      if (!body) return;
      ToolCall tc;
      try {
        tc = body->get<ToolCall>();
      } catch (const std::exception& e) {
        send_error(res, 400, e.what(), "tool");
        return;
      }
      send_json(res, Json(call(tc, fixtures)));
    });

    http.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      auto body = parse_body(req, res);
      if (!body) return;
      if (!body->contains("query") || !body->at("query").is_string()) {
        send_error(res, 400, "query must be a string", "query");
        return;
      }
      std::optional<std::string> image;
      if (body->contains("image")) {
        if (!body->at("image").is_string()) {
          send_error(res, 400, "image must be a string", "image");
          return;
        }
        // Same descriptor rule as the CLI: the file name, not the path.
        image = std::filesystem::path(body->at("image").get<std::string>()).filename().string();
      }
      auto trace = agent::run_session(body->at("query").get<std::string>(), image, config.session,
                                      fixtures);
      const std::string id = "session-" + std::to_string(next_session++);
      const auto outcome = std::string(agent::to_string(trace.outcome));
      {
        std::lock_guard lock(sessions_mu);
        sessions.emplace(id, std::move(trace));
      }
      send_json(res, Json{{"session_id", id}, {"outcome", outcome}});
    });

    http.Get(R"(/sessions/([^/]+)/trace)", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      auto trace = lookup(id);
      if (!trace) return send_error(res, 404, "unknown session '" + id + "'");
      Json j = *trace;
      j["session_id"] = id;
      send_json(res, j);
    });

    http.Get(R"(/sessions/([^/]+)/plan)", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      auto trace = lookup(id);
      if (!trace) return send_error(res, 404, "unknown session '" + id + "'");
      send_json(res, Json{{"session_id", id},
                          {"outcome", agent::to_string(trace->outcome)},
                          {"days", trace->days},
                          {"budget", trace->state.draft.budget},
                          {"total_cost", trace->total_cost()},
                          {"notes", trace->notes},
                          {"violations", trace->violations}});
    });

    http.Post(R"(/sessions/([^/]+)/refine)", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      auto body = parse_body(req, res);
      if (!body) return;
      auto trace = lookup(id);
      if (!trace) return send_error(res, 404, "unknown session '" + id + "'");
      agent::Refinement refinement;
      try {
        refinement = body->get<agent::Refinement>();
      } catch (const std::exception& e) {
        return send_error(res, 400, e.what(), "refinement");
      }
      agent::SessionTrace next;
      try {
        next = agent::refine_session(*trace, refinement, fixtures);
      } catch (const Error& e) {
        return send_error(res, 400, e.what(), "refinement");
      }
      Json j = next;
      j["session_id"] = id;
      {
        std::lock_guard lock(sessions_mu);
        sessions[id] = std::move(next);
      }
      send_json(res, j);
    });

    http.set_exception_handler(
        [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
          std::string what = "internal error";
          try {
            std::rethrow_exception(ep);
          } catch (const std::exception& e) {
            what = e.what();
          } catch (...) {
          }
          send_error(res, 500, what);
        });
    http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) send_error(res, res.status, res.status == 404 ? "not found" : "error");
    });
    http.set_post_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
      std::string rid = req.get_header_value("X-Request-Id");
      if (rid.empty()) rid = "req-" + std::to_string(next_request++);
      res.set_header("X-Request-Id", rid);
    });
    http.set_logger([this](const httplib::Request& req, const httplib::Response& res) {
      if (!log) return;
      std::lock_guard lock(log_mu);
      *log << "[" << res.get_header_value("X-Request-Id") << "] " << req.method << " " << req.path
           << " " << res.status << std::endl;
    });
  }
};

Server::Server(FixtureStore fixtures, ServerConfig config, std::ostream* log)
    : impl_(std::make_unique<Impl>(std::move(fixtures), std::move(config), log)) {}

Server::~Server() { stop(); }

int Server::start() {
  auto& s = *impl_;
  if (s.worker.joinable()) return s.bound_port;
  // httplib's default also sets SO_REUSEPORT, which lets a second server
  // silently share a port that is already taken.
  s.http.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });
  if (s.config.port == 0) {
    s.bound_port = s.http.bind_to_any_port(s.config.host);
    if (s.bound_port < 0) throw Error("cannot bind " + s.config.host);
  } else {
    if (!s.http.bind_to_port(s.config.host, s.config.port)) {
      throw Error("cannot bind " + s.config.host + ":" + std::to_string(s.config.port));
    }
    s.bound_port = s.config.port;
  }
  s.worker = std::thread([&s] { s.http.listen_after_bind(); });
  s.http.wait_until_ready();
  return s.bound_port;
}

void Server::stop() {
  if (!impl_) return;
  auto& s = *impl_;
  if (s.worker.joinable()) {
    s.http.stop();
    s.worker.join();
  }
}

int Server::port() const { return impl_->bound_port; }

int serve_until_signal(FixtureStore fixtures, ServerConfig config, std::ostream& log) {
  Server server(std::move(fixtures), std::move(config), &log);
  g_stop_requested = 0;
  auto prev_int = std::signal(SIGINT, on_stop_signal);
  auto prev_term = std::signal(SIGTERM, on_stop_signal);
  const int port = server.start();
  log << "listening on port " << port << std::endl;
  while (!g_stop_requested) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  log << "shutting down" << std::endl;
  server.stop();
  std::signal(SIGINT, prev_int);
  std::signal(SIGTERM, prev_term);
  return 0;
}

}  // namespace travelkit::tools
