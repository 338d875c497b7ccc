#include <cstdlib>
#include <future>

#include "builders.hpp"
#include "doctest.h"
#include "httplib.h"
#include "travelkit/tools/server.hpp"

using namespace travelkit;
namespace tt = travelkit::testing;

namespace {

const tools::FixtureStore& brooklyn() {
  static const auto store = tools::FixtureStore::load(tt::fixture_dir("brooklyn"));
  return store;
}

struct Running {
  tools::Server server;
  int port;
  explicit Running(tools::ServerConfig cfg = {}) : server(brooklyn(), with_free_port(cfg)), port(server.start()) {}
  ~Running() { server.stop(); }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port); }
  static tools::ServerConfig with_free_port(tools::ServerConfig cfg) {
    cfg.port = 0;
    return cfg;
  }
};

Json body(const httplib::Result& r) { return Json::parse(r->body); }

// Restores TRAVELKIT_BIND on scope exit.
struct BindEnv {
  explicit BindEnv(const char* value) { ::setenv(tools::kBindEnv, value, 1); }
  ~BindEnv() { ::unsetenv(tools::kBindEnv); }
};

}  // namespace

TEST_CASE("health reports the loaded fixture") {
  Running s;
  auto c = s.client();
  auto r = c.Get("/tools/health");
  REQUIRE(r);
  CHECK(r->status == 200);
  const auto j = body(r);
  CHECK(j.at("status") == "ok");
  CHECK(j.at("pois").get<std::size_t>() == brooklyn().pois().size());
  CHECK(r->has_header("X-Request-Id"));
  CHECK_FALSE(r->get_header_value("X-Request-Id").empty());
}

TEST_CASE("request ids are echoed") {
  Running s;
  auto c = s.client();
  auto r = c.Get("/tools/health", {{"X-Request-Id", "abc-123"}});
  REQUIRE(r);
  CHECK(r->get_header_value("X-Request-Id") == "abc-123");
  r = c.Get("/nowhere", {{"X-Request-Id", "lost"}});
  REQUIRE(r);
  CHECK(r->status == 404);
  CHECK(r->get_header_value("X-Request-Id") == "lost");
  CHECK(body(r).at("error").at("status") == 404);
}

TEST_CASE("tool calls over HTTP match in-process calls") {
  Running s;
  auto c = s.client();
  tools::ToolCall tc;
  tc.tool = tools::Tool::kHours;
  tc.request_id = "r1";
  tc.poi_id = "brooklyn-bridge";
  auto r = c.Post("/tools/call", Json(tc).dump(), "application/json");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(body(r) == Json(tools::call(tc, brooklyn())));

  r = c.Post("/tools/call", R"({"tool":"teleport"})", "application/json");
  REQUIRE(r);
  CHECK(r->status == 400);
  CHECK(body(r).at("error").at("field") == "tool");

  r = c.Post("/tools/call", "{not json", "application/json");
  REQUIRE(r);
  CHECK(r->status == 400);
  CHECK(body(r).at("error").at("message").get<std::string>().find("malformed JSON") == 0);
}

TEST_CASE("session lifecycle") {
  Running s;
  auto c = s.client();
  auto r = c.Post("/sessions",
                  Json{{"query", "One day in Brooklyn on Saturday, $60 for 2 people"},
                       {"image", "/photos/brooklyn-bridge-street.jpg"}}
                      .dump(),
                  "application/json");
  REQUIRE(r);
  REQUIRE(r->status == 200);
  const auto created = body(r);
  const auto id = created.at("session_id").get<std::string>();
  CHECK(created.at("outcome") == "completed");

  r = c.Get("/sessions/" + id + "/plan");
  REQUIRE(r);
  CHECK(r->status == 200);
  const auto plan = body(r);
  CHECK(plan.at("outcome") == "completed");
  CHECK_FALSE(plan.at("days").empty());
  CHECK(plan.at("violations").empty());

  r = c.Get("/sessions/" + id + "/trace");
  REQUIRE(r);
  const auto trace = body(r);
  CHECK(trace.at("session_id") == id);
  CHECK(trace.at("days") == plan.at("days"));

  r = c.Post("/sessions/" + id + "/refine", R"({"exclude":"janes-carousel"})", "application/json");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(body(r).at("refinements").size() == 1);
  r = c.Get("/sessions/" + id + "/plan");
  CHECK(r->body.find("janes-carousel") == std::string::npos);

  r = c.Post("/sessions/" + id + "/refine", R"({"colour":"red"})", "application/json");
  REQUIRE(r);
  CHECK(r->status == 400);
}

TEST_CASE("bad session requests") {
  Running s;
  auto c = s.client();
  auto r = c.Post("/sessions", "{", "application/json");
  REQUIRE(r);
  CHECK(r->status == 400);
  r = c.Post("/sessions", R"({"query": 3})", "application/json");
  REQUIRE(r);
  CHECK(r->status == 400);
  CHECK(body(r).at("error").at("field") == "query");
  r = c.Post("/sessions", R"({"query": "a day out", "image": 1})", "application/json");
  REQUIRE(r);
  CHECK(body(r).at("error").at("field") == "image");
  r = c.Get("/sessions/session-999/plan");
  REQUIRE(r);
  CHECK(r->status == 404);
  r = c.Post("/sessions/session-999/refine", "{}", "application/json");
  REQUIRE(r);
  CHECK(r->status == 404);
}

TEST_CASE("concurrent sessions stay isolated") {
  Running s;
  const std::vector<std::string> queries = {
      "One day in Brooklyn on Saturday, $60 for 2 people",
      "A day in Brooklyn on Sunday with $200 for 1 person",
      "Brooklyn on Saturday, $40 for 3 people",
      "A cheap Brooklyn day for 1 person on Friday, $20",
  };
  std::vector<std::future<std::pair<std::string, std::string>>> futures;
  for (int round = 0; round < 3; ++round) {
    for (const auto& q : queries) {
      futures.push_back(std::async(std::launch::async, [&s, q] {
        auto c = s.client();
        auto r = c.Post("/sessions", Json{{"query", q}}.dump(), "application/json");
        const auto id = Json::parse(r->body).at("session_id").get<std::string>();
        auto plan = c.Get("/sessions/" + id + "/plan");
        return std::pair{q, Json::parse(plan->body).at("days").dump()};
      }));
    }
  }
  std::map<std::string, std::set<std::string>> seen;
  for (auto& f : futures) {
    auto [q, days] = f.get();
    seen[q].insert(days);
  }
  CHECK(seen.size() == queries.size());
  for (const auto& q : queries) {
    CHECK(seen[q].size() == 1);
    const auto serial = agent::run_session(q, std::nullopt, {}, brooklyn());
    CHECK(*seen[q].begin() == Json(serial.days).dump());
  }
}

TEST_CASE("bind address from the environment") {
  tools::ServerConfig base;
  {
    BindEnv env(":9123");
    const auto c = tools::apply_bind_env(base);
    CHECK(c.host == "127.0.0.1");
    CHECK(c.port == 9123);
  }
  {
    BindEnv env("0.0.0.0:0");
    const auto c = tools::apply_bind_env(base);
    CHECK(c.host == "0.0.0.0");
    CHECK(c.port == 0);
  }
  for (const char* bad : {"localhost", "host:", "host:99999", "host:80x"}) {
    BindEnv env(bad);
    CHECK_THROWS_AS(tools::apply_bind_env(base), Error);
  }
  CHECK(tools::apply_bind_env(base).port == 8080);
}

TEST_CASE("starting on a busy port fails") {
  Running s;
  tools::ServerConfig cfg;
  cfg.port = s.port;
  tools::Server second(brooklyn(), cfg);
  CHECK_THROWS_AS(second.start(), Error);
}
