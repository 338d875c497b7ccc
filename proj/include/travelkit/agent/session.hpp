#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "travelkit/agent/query.hpp"
#include "travelkit/agent/state.hpp"
#include "travelkit/cot/reasoner.hpp"
#include "travelkit/plan/solver.hpp"
#include "travelkit/tools/tool_hub.hpp"

namespace travelkit::agent {

enum class Outcome { kCompleted, kClarification, kIncomplete, kInfeasible, kInfeasibleLock };
std::string_view to_string(Outcome o);
std::optional<Outcome> parse_outcome(std::string_view s);

struct SessionConfig {
  int max_steps = 32;
  std::size_t beam_width = plan::kDefaultBeamWidth;
  std::uint64_t seed = 0;
  std::size_t shortlist_size = 6;
  bool operator==(const SessionConfig&) const = default;
};

using ToolPolicy = std::function<std::optional<tools::ToolCall>(const PlanState&)>;

// Pluggable pieces. Null members fall back to the reference implementations
// (ReferenceReasoner, a LookupRecognizer over the fixture gazetteer,
// select_tool).
struct Adapters {
  const cot::Reasoner* reasoner = nullptr;
  const LandmarkRecognizer* recognizer = nullptr;
  ToolPolicy policy;
};

struct Refinement {
  std::optional<Money> budget;
  std::optional<std::string> lock;
  std::optional<std::string> exclude;
  std::optional<TimeWindow> day_window;
  bool operator==(const Refinement&) const = default;
};

struct TraceEntry {
  tools::ToolCall call;
  tools::ToolResponse response;
  bool operator==(const TraceEntry&) const = default;
};

struct SessionTrace {
  std::string query;
  std::optional<std::string> image;
  SessionConfig config;
  QuerySpec spec;
  std::vector<TraceEntry> calls;
  std::vector<Refinement> refinements;
  // Plan_T: the state the final answer was generated from.
  PlanState state;
  std::vector<plan::Itinerary> days;
  Outcome outcome = Outcome::kCompleted;
  std::vector<std::string> notes;
  std::vector<std::string> violations;

  Money total_cost() const;
  std::vector<Observation> observations() const;
  bool operator==(const SessionTrace&) const = default;
};

// Final integration step. Depends only on the plan state, the observations
// and the chain: candidates keep the hours and prices that tools returned,
// POIs the chain marks infeasible are dropped unless locked, reviews scale
// utility by mean rating / 5, unresolvable transit legs are unreachable.
// One itinerary per requested day, on consecutive weekdays.
std::vector<plan::Itinerary> generate(const PlanState& plan_t, std::span<const Observation> obs,
                                      const CoTChain& r, std::size_t beam_width);

// Rechecks every day against its instance and the whole plan against budget,
// locks and repeated visits.
std::vector<std::string> verify_plan(const PlanState& plan_t, std::span<const Observation> obs,
                                     const CoTChain& r, const std::vector<plan::Itinerary>& days);

SessionTrace run_session(const std::string& message, const std::optional<std::string>& visual,
                         const SessionConfig& config, const tools::FixtureStore& fixtures,
                         const Adapters& adapters = {});

// Throws Error when the refinement both locks and excludes a POI, or names
// a POI that is not in the fixtures.
SessionTrace refine_session(const SessionTrace& trace, const Refinement& refinement,
                            const tools::FixtureStore& fixtures, const Adapters& adapters = {});

// Re-runs the recorded query and refinements against the fixtures.
SessionTrace replay(const SessionTrace& trace, const tools::FixtureStore& fixtures,
                    const Adapters& adapters = {});

void to_json(Json& j, const SessionConfig& v);
void from_json(const Json& j, SessionConfig& v);
void to_json(Json& j, const Refinement& v);
void from_json(const Json& j, Refinement& v);
void to_json(Json& j, const TraceEntry& v);
void from_json(const Json& j, TraceEntry& v);
void to_json(Json& j, const SessionTrace& v);
void from_json(const Json& j, SessionTrace& v);

}  // namespace travelkit::agent
