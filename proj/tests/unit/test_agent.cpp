#include <algorithm>

#include "builders.hpp"
#include "doctest.h"
#include "travelkit/agent/query.hpp"
#include "travelkit/agent/session.hpp"
#include "travelkit/agent/state.hpp"
#include "travelkit/cot/reasoner.hpp"
#include "travelkit/plan/feasibility.hpp"
#include "travelkit/tools/fixture_store.hpp"

using namespace travelkit;
using namespace travelkit::agent;
using tools::Tool;
namespace tt = travelkit::testing;

namespace {

const tools::FixtureStore& brooklyn() {
  static const tools::FixtureStore store = tools::FixtureStore::load(tt::fixture_dir("brooklyn"));
  return store;
}

tools::FixtureStore brooklyn_with(const tools::ToolConfig& cfg) {
  const auto& b = brooklyn();
  std::vector<tools::TransitEdge> edges;
  for (const auto& a : b.pois().all()) {
    for (const auto& c : b.pois().all()) {
      if (auto m = b.edge(a.id, c.id)) edges.push_back({a.id, c.id, *m});
    }
  }
  std::vector<tools::Review> reviews;
  for (const auto& p : b.pois().all()) {
    for (const auto& r : b.reviews_of(p.id)) reviews.push_back(r);
  }
  return tools::FixtureStore(b.pois(), edges, reviews, b.gazetteer(), cfg);
}

const std::string kQuery = "One day in Brooklyn on Saturday, $60 for 2 people";

QuerySpec analyze(const std::string& q) {
  return analyze_query(q, std::nullopt, brooklyn().place_names(), nullptr);
}

Observation observe(const Need& need, int step) {
  const auto tc = call_for(need, step);
  const auto r = tools::call(tc, brooklyn());
  REQUIRE(r.status == tools::ToolStatus::kOk);
  return {tc, *r.payload, step};
}

PlanState state_with(const std::vector<Need>& needs) {
  PlanState s;
  for (const auto& n : needs) s.pending.insert(n);
  for (const auto* id : {"brooklyn-bridge", "janes-carousel"}) {
    Poi p = brooklyn().pois().at(id);
    p.hours.clear();
    p.price.amount = 0;
    s.draft.candidates.push_back(p);
  }
  return s;
}

}  // namespace

TEST_CASE("query analysis extracts slots") {
  auto s = analyze("3 days in Brooklyn with $500 for 2 people");
  CHECK(s.destination == "New York");
  CHECK(s.days == 3);
  CHECK(s.budget == Money{50000, "USD"});
  CHECK(s.group_size == 2);
  CHECK_FALSE(s.empty());

  s = analyze("A two-day trip to NYC for a family of four, 1,200 JPY, wheelchair access please");
  CHECK(s.destination == "New York");
  CHECK(s.days == 2);
  CHECK(s.group_size == 4);
  CHECK(s.budget == Money{1200, "JPY"});
  CHECK(s.accessibility == std::set<std::string>{"wheelchair"});

  s = analyze("weekend in New York City, 80 euros, travelling solo with my elderly mother");
  CHECK(s.days == 2);
  CHECK(s.budget == Money{8000, "EUR"});
  CHECK(s.accessibility.contains("elder-friendly"));
  CHECK(s.destination == "New York");

  s = analyze("best pizza on Sunday for a couple, 40 dollars");
  CHECK(s.weekday == 6);
  CHECK(s.group_size == 2);
  CHECK(s.budget == Money{4000, "USD"});
  CHECK(s.quality_ranking);
  CHECK_FALSE(s.destination.has_value());
  CHECK(s.remainder.find("pizza") != std::string::npos);

  s = analyze("\xE2\x82\xAC" "75 in DUMBO");
  CHECK(s.budget == Money{7500, "EUR"});

  CHECK(analyze("").empty());
  CHECK(analyze("hello there").empty());
  CHECK(analyze("hello there").remainder == "hello there");
}

TEST_CASE("place names match whole words, longest first") {
  std::map<std::string, std::string> places = {{"York", "York"}, {"New York", "New York"}};
  CHECK(analyze_query("trip to new york", std::nullopt, places, nullptr).destination == "New York");
  CHECK(analyze_query("trip to york", std::nullopt, places, nullptr).destination == "York");
  CHECK_FALSE(analyze_query("trip to yorkshire", std::nullopt, places, nullptr).destination.has_value());
  std::vector<std::string> cities = {"Paris"};
  CHECK(analyze_query("Paris for $100", std::nullopt, cities, nullptr).destination == "Paris");
}

TEST_CASE("images go through the recognizer") {
  LookupRecognizer rec(std::map<std::string, std::string>{{"bridge.jpg", "brooklyn-bridge"}});
  auto s = analyze_query("what is this?", std::string("bridge.jpg"), brooklyn().place_names(), &rec);
  CHECK(s.image == "bridge.jpg");
  CHECK(s.landmark == "brooklyn-bridge");
  CHECK_FALSE(s.empty());
  s = analyze_query("", std::string("other.jpg"), brooklyn().place_names(), &rec);
  CHECK_FALSE(s.landmark.has_value());
  CHECK_FALSE(s.empty());
  CHECK(Json(s).get<QuerySpec>() == s);
}

TEST_CASE("needs and calls") {
  const Need n{Tool::kTransit, "a", "b"};
  const auto tc = call_for(n, 7);
  CHECK(tc.request_id == "t7-transit-a-b");
  CHECK(need_of(tc) == n);
  CHECK(is_blocking(n));
  CHECK_FALSE(is_blocking({Tool::kReviews, "a", ""}));
  CHECK(Json(n).get<Need>() == n);
}

TEST_CASE("default policy follows tool priority then subject") {
  PlanState s = state_with({{Tool::kReviews, "a", ""}, {Tool::kPrice, "b", ""}, {Tool::kHours, "z", ""},
                            {Tool::kMapLocate, "img.jpg", ""}});
  std::vector<Tool> order;
  while (auto tc = select_tool(s)) {
    order.push_back(tc->tool);
    s.pending.erase(need_of(*tc));
  }
  CHECK(order == std::vector<Tool>{Tool::kMapLocate, Tool::kHours, Tool::kPrice, Tool::kReviews});
  CHECK_FALSE(select_tool(PlanState{}).has_value());
}

TEST_CASE("every two-need policy keeps the state consistent") {
  const Need a{Tool::kHours, "brooklyn-bridge", ""};
  const Need b{Tool::kPrice, "brooklyn-bridge", ""};
  const Need stray{Tool::kPrice, "janes-carousel", ""};
  const std::array<Need, 3> actions = {a, b, stray};
  int policies = 0;
  for (int len = 0; len <= 3; ++len) {
    int count = 1;
    for (int k = 0; k < len; ++k) count *= 3;
    for (int code = 0; code < count; ++code) {
      ++policies;
      PlanState s = state_with({a, b});
      std::set<Need> seen;
      bool threw = false;
      int c = code;
      for (int k = 0; k < len && !threw; ++k) {
        const Need& n = actions[static_cast<std::size_t>(c % 3)];
        c /= 3;
        if (n == stray) {
          CHECK_THROWS_AS(update_plan(s, observe(n, k)), Error);
          threw = true;
          continue;
        }
        s = update_plan(s, observe(n, k));
        seen.insert(n);
        CHECK(s.t == k + 1);
      }
      for (const auto& n : {a, b}) {
        CHECK(s.resolved.contains(n) == seen.contains(n));
        CHECK(s.pending.contains(n) != seen.contains(n));
      }
      if (seen.contains(b)) CHECK(s.draft.candidates[0].price == Money{0, "USD"});
      if (seen.contains(a)) CHECK(s.draft.candidates[0].hours == brooklyn().pois().at("brooklyn-bridge").hours);
    }
  }
  CHECK(policies == 40);
}

TEST_CASE("observation order does not change the plan state") {
  const std::vector<Need> needs = {{Tool::kHours, "brooklyn-bridge", ""},
                                   {Tool::kPrice, "brooklyn-bridge", ""},
                                   {Tool::kHours, "janes-carousel", ""},
                                   {Tool::kPrice, "janes-carousel", ""},
                                   {Tool::kTransit, "brooklyn-bridge", "janes-carousel"}};
  std::vector<std::size_t> perm = {0, 1, 2, 3, 4};
  std::optional<PlanState> first;
  int orders = 0;
  do {
    PlanState s = state_with(needs);
    for (auto i : perm) s = update_plan(s, observe(needs[i], 0));
    CHECK(s.pending.empty());
    CHECK(s.t == 5);
    if (!first) first = s;
    CHECK(s == *first);
    ++orders;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(orders == 120);
  CHECK(first->draft.candidates[1].price == Money{250, "USD"});
  CHECK(first->draft.travel_edges.size() == 1);
}

TEST_CASE("protocol violations") {
  const Need a{Tool::kHours, "brooklyn-bridge", ""};
  PlanState s = state_with({a});
  auto obs = observe(a, 0);
  obs.payload = tools::PriceInfo{"brooklyn-bridge", {}};
  CHECK_THROWS_WITH_AS(update_plan(s, obs), doctest::Contains("protocol violation"), Error);
  obs = observe(a, 0);
  std::get<tools::HoursInfo>(obs.payload).poi_id = "janes-carousel";
  CHECK_THROWS_AS(update_plan(s, obs), Error);
  s = update_plan(s, observe(a, 0));
  const auto again = update_plan(s, observe(a, 1));
  CHECK(again.t == s.t + 1);
  CHECK(again.resolved == s.resolved);
  CHECK_THROWS_AS(mark_unresolvable(s, a), Error);
  PlanState p = state_with({a});
  p = mark_unresolvable(p, a);
  CHECK(p.unresolvable.contains(a));
  CHECK(p.pending.empty());
  CHECK(Json(s).get<PlanState>() == s);
}

TEST_CASE("a full session") {
  SessionConfig cfg;
  const auto trace = run_session(kQuery, std::string("brooklyn-bridge-street.jpg"), cfg, brooklyn());
  CHECK(trace.outcome == Outcome::kCompleted);
  CHECK(trace.spec.landmark == "brooklyn-bridge");
  CHECK(trace.spec.weekday == 5);
  REQUIRE_FALSE(trace.calls.empty());
  CHECK(trace.calls.front().call.tool == Tool::kMapLocate);
  CHECK(static_cast<int>(trace.calls.size()) <= cfg.max_steps);
  REQUIRE(trace.days.size() == 1);
  CHECK(trace.days[0].visits.front().poi_id == "brooklyn-bridge");
  CHECK(trace.total_cost().amount <= 6000);
  CHECK(trace.violations.empty());
  CHECK(trace.state.pending.empty());
  CHECK(verify_plan(trace.state, trace.observations(), trace.state.chain, trace.days).empty());
  CHECK(generate(trace.state, trace.observations(), trace.state.chain, cfg.beam_width) == trace.days);
  CHECK(Json(trace).get<SessionTrace>() == trace);
  CHECK(run_session(kQuery, std::string("brooklyn-bridge-street.jpg"), cfg, brooklyn()) == trace);
  CHECK(replay(trace, brooklyn()) == trace);
}

TEST_CASE("clarification instead of guessing") {
  SessionConfig cfg;
  for (const char* q : {"", "hello", "a day trip for $50", "Brooklyn for 2 people"}) {
    const auto t = run_session(q, std::nullopt, cfg, brooklyn());
    CHECK(t.outcome == Outcome::kClarification);
    CHECK(t.calls.empty());
    CHECK_FALSE(t.notes.empty());
  }
  // A recognised photo supplies the city.
  const auto t = run_session("$40 on Saturday please", std::string("transit-museum-street.jpg"), cfg, brooklyn());
  CHECK(t.outcome == Outcome::kCompleted);
  CHECK(t.days[0].contains("new-york-transit-museum"));
}

TEST_CASE("step limit and tool outages end as incomplete") {
  SessionConfig cfg;
  cfg.max_steps = 3;
  auto t = run_session(kQuery, std::nullopt, cfg, brooklyn());
  CHECK(t.outcome == Outcome::kIncomplete);
  CHECK(t.calls.size() == 3);
  CHECK(std::any_of(t.notes.begin(), t.notes.end(),
                    [](const std::string& n) { return n.find("unresolved") != std::string::npos; }));

  tools::ToolConfig off;
  off.offline = {"price"};
  const auto fx = brooklyn_with(off);
  t = run_session(kQuery, std::nullopt, SessionConfig{}, fx);
  CHECK(t.outcome == Outcome::kIncomplete);
  CHECK_FALSE(t.state.unresolvable.empty());

  tools::ToolConfig flaky;
  flaky.failure_rate = 0.4;
  flaky.seed = 2;
  const auto ffx = brooklyn_with(flaky);
  const auto a = run_session(kQuery, std::nullopt, SessionConfig{}, ffx);
  CHECK(a == run_session(kQuery, std::nullopt, SessionConfig{}, ffx));
  CHECK(a.outcome != Outcome::kCompleted);
  CHECK(replay(a, ffx) == a);

  cfg.max_steps = 0;
  CHECK_THROWS_AS(run_session(kQuery, std::nullopt, cfg, brooklyn()), Error);
}

TEST_CASE("custom policies") {
  Adapters lazy;
  lazy.policy = [](const PlanState&) -> std::optional<tools::ToolCall> { return std::nullopt; };
  const auto t = run_session(kQuery, std::nullopt, SessionConfig{}, brooklyn(), lazy);
  CHECK(t.calls.empty());
  CHECK(t.outcome == Outcome::kIncomplete);

  Adapters rogue;
  rogue.policy = [](const PlanState&) -> std::optional<tools::ToolCall> {
    return call_for(Need{Tool::kHours, "somewhere-else", ""}, 0);
  };
  CHECK_THROWS_AS(run_session(kQuery, std::nullopt, SessionConfig{}, brooklyn(), rogue), Error);

  // Reverse priority still completes: order does not matter for the result.
  Adapters reverse;
  reverse.policy = [](const PlanState& s) -> std::optional<tools::ToolCall> {
    if (s.pending.empty()) return std::nullopt;
    return call_for(*s.pending.rbegin(), s.t);
  };
  const auto r = run_session(kQuery, std::nullopt, SessionConfig{}, brooklyn(), reverse);
  const auto d = run_session(kQuery, std::nullopt, SessionConfig{}, brooklyn());
  CHECK(r.outcome == Outcome::kCompleted);
  CHECK(r.days == d.days);
}

TEST_CASE("chain conflicts drop POIs") {
  // Marks the carousel unschedulable whatever the hours say.
  struct Sceptic : cot::Reasoner {
    CoTChain reason(const cot::QueryContext& ctx) const override {
      auto chain = cot::reference_reason(ctx);
      for (auto& st : chain.temporal) {
        if (st.refs.front() == "janes-carousel") st.payload = WindowClaim{std::nullopt};
      }
      return chain;
    }
  } sceptic;
  Adapters ad;
  ad.reasoner = &sceptic;
  const auto base = run_session(kQuery, std::nullopt, SessionConfig{}, brooklyn());
  REQUIRE(base.days[0].contains("janes-carousel"));
  const auto t = run_session(kQuery, std::nullopt, SessionConfig{}, brooklyn(), ad);
  CHECK_FALSE(t.days[0].contains("janes-carousel"));
}

TEST_CASE("refinements") {
  const auto base = run_session(kQuery, std::nullopt, SessionConfig{}, brooklyn());
  REQUIRE(base.outcome == Outcome::kCompleted);

  Refinement ex;
  ex.exclude = "brooklyn-bridge";
  const auto e = refine_session(base, ex, brooklyn());
  CHECK(e.outcome == Outcome::kCompleted);
  CHECK_FALSE(e.days[0].contains("brooklyn-bridge"));
  CHECK(e.calls.size() == base.calls.size());  // nothing new to ask
  CHECK(e.refinements.size() == 1);

  Refinement lock;
  lock.lock = "grimaldis-pizzeria";
  const auto l = refine_session(base, lock, brooklyn());
  CHECK(l.days[0].contains("grimaldis-pizzeria"));
  CHECK(l.outcome == Outcome::kCompleted);

  Refinement poor;
  poor.budget = Money{1000, "USD"};
  const auto p = refine_session(l, poor, brooklyn());
  CHECK(p.outcome == Outcome::kInfeasibleLock);

  Refinement window;
  window.day_window = TimeWindow{720, 900};
  const auto w = refine_session(base, window, brooklyn());
  for (const auto& v : w.days[0].visits) {
    CHECK(v.start >= 720);
    CHECK(v.end <= 900);
  }
  CHECK(replay(w, brooklyn()) == w);
  CHECK(replay(p, brooklyn()) == p);

  Refinement both;
  both.lock = both.exclude = "janes-carousel";
  CHECK_THROWS_AS(refine_session(base, both, brooklyn()), Error);
  CHECK_THROWS_AS(refine_session(e, Refinement{std::nullopt, std::string("brooklyn-bridge"), {}, {}}, brooklyn()), Error);
  Refinement ghost;
  ghost.exclude = "ghost";
  CHECK_THROWS_AS(refine_session(base, ghost, brooklyn()), Error);
  Refinement bad_window;
  bad_window.day_window = TimeWindow{900, 720};
  CHECK_THROWS_AS(refine_session(base, bad_window, brooklyn()), Error);
}

TEST_CASE("refinement records reject unknown fields") {
  Refinement r;
  r.budget = Money{100, "USD"};
  r.lock = "a";
  CHECK(Json(r).get<Refinement>() == r);
  CHECK_THROWS_AS(Json::parse(R"({"exclude":"a","colour":"red"})").get<Refinement>(), RecordError);
  CHECK_THROWS_AS(Json::parse("[1]").get<Refinement>(), RecordError);
}
