#pragma once

#include <memory>
#include <ostream>
#include <string>

#include "travelkit/agent/session.hpp"
#include "travelkit/tools/fixture_store.hpp"

namespace travelkit::tools {

inline constexpr const char* kBindEnv = "TRAVELKIT_BIND";

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  agent::SessionConfig session;
};

// Overrides host and port from TRAVELKIT_BIND ("host:port" or ":port") when
// it is set. Throws Error on a malformed value.
ServerConfig apply_bind_env(ServerConfig config);

// HTTP facade over agent sessions and tools:
//   POST /sessions               {"query", "image"?}  -> {"session_id", "outcome"}
//   GET  /sessions/{id}/trace
//   GET  /sessions/{id}/plan
//   POST /sessions/{id}/refine   Refinement record     -> trace
//   POST /tools/call             ToolCall record       -> ToolResponse
//   GET  /tools/health
// Errors come back as {"error": {"status", "message", "field"?}}. Every
// response carries X-Request-Id (echoed from the request when present).
class Server {
 public:
  Server(FixtureStore fixtures, ServerConfig config, std::ostream* log = nullptr);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and serves on a background thread. Returns the bound port.
  // Throws Error when the address cannot be bound.
  int start();
  void stop();
  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Runs until SIGINT or SIGTERM, then shuts down cleanly. Returns 0.
int serve_until_signal(FixtureStore fixtures, ServerConfig config, std::ostream& log);

}  // namespace travelkit::tools
