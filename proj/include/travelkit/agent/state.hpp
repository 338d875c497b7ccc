#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "travelkit/core/types.hpp"
#include "travelkit/plan/instance.hpp"
#include "travelkit/tools/tool_hub.hpp"

namespace travelkit::agent {

// A piece of information the plan is waiting for. subject is a POI id, or
// the image descriptor for map_locate; other is the second POI of a transit
// leg. Ordering (tool, subject, other) is the selection priority.
struct Need {
  tools::Tool tool = tools::Tool::kHours;
  std::string subject;
  std::string other;
  auto operator<=>(const Need&) const = default;
};

Need need_of(const tools::ToolCall& tc);
tools::ToolCall call_for(const Need& need, int step);

// Reviews only refine utilities; everything else blocks a complete plan.
bool is_blocking(const Need& need);

struct Observation {
  tools::ToolCall request;
  tools::ToolPayload payload;
  int step = 0;
  bool operator==(const Observation&) const = default;
};

struct PlanState {
  int t = 0;
  std::map<Need, Observation> resolved;
  std::set<Need> pending;
  // Needs whose tool answered with something other than ok.
  std::set<Need> unresolvable;
  // Constraints plus shortlisted candidates. Candidate hours and prices are
  // filled only from observations.
  plan::PlanInstance draft;
  CoTChain chain;
  int days = 1;
  std::set<std::string> excluded;
  bool operator==(const PlanState&) const = default;
};

// Default policy: map_locate, then hours, price, transit, reviews; within a
// tool, by subject. nullopt means Finish.
std::optional<tools::ToolCall> select_tool(const PlanState& state);

// Moves the observed need from pending to resolved and copies the payload
// into the draft. An observation for an already resolved need only advances
// t. Throws Error for a need that was never requested or whose payload does
// not fit the tool.
PlanState update_plan(PlanState state, const Observation& obs);

// Records a non-ok tool answer. Advances t.
PlanState mark_unresolvable(PlanState state, const Need& need);

void to_json(Json& j, const Need& v);
void from_json(const Json& j, Need& v);
void to_json(Json& j, const Observation& v);
void from_json(const Json& j, Observation& v);
void to_json(Json& j, const PlanState& v);
void from_json(const Json& j, PlanState& v);

}  // namespace travelkit::agent
