#include "travelkit/agent/state.hpp"

#include <algorithm>

#include "travelkit/core/error.hpp"

namespace travelkit::agent {
namespace {

std::string describe(const Need& n) {
  std::string s = std::string(tools::to_string(n.tool)) + "(" + n.subject;
  if (!n.other.empty()) s += ", " + n.other;
  return s + ")";
}

// POI id(s) a payload speaks about, as a Need would name them.
std::pair<std::string, std::string> payload_subject(const tools::ToolPayload& p) {
  struct Visitor {
    std::pair<std::string, std::string> operator()(const tools::HoursInfo& v) const { return {v.poi_id, ""}; }
    std::pair<std::string, std::string> operator()(const tools::PriceInfo& v) const { return {v.poi_id, ""}; }
    std::pair<std::string, std::string> operator()(const tools::ReviewInfo& v) const { return {v.poi_id, ""}; }
    std::pair<std::string, std::string> operator()(const tools::TransitInfo& v) const { return {v.from, v.to}; }
    std::pair<std::string, std::string> operator()(const tools::LocateInfo&) const { return {"", ""}; }
  };
  return std::visit(Visitor{}, p);
}

}  // namespace

Need need_of(const tools::ToolCall& tc) {
  Need n{tc.tool, "", ""};
  if (tc.tool == tools::Tool::kMapLocate) {
    n.subject = tc.image ? *tc.image : tc.text.value_or("");
  } else {
    n.subject = tc.poi_id.value_or("");
    if (tc.tool == tools::Tool::kTransit) n.other = tc.to_poi_id.value_or("");
  }
  return n;
}

tools::ToolCall call_for(const Need& need, int step) {
  tools::ToolCall tc;
  tc.tool = need.tool;
  tc.request_id = "t" + std::to_string(step) + "-" + std::string(tools::to_string(need.tool)) + "-" +
                  need.subject + (need.other.empty() ? "" : "-" + need.other);
  if (need.tool == tools::Tool::kMapLocate) {
    tc.image = need.subject;
  } else {
    tc.poi_id = need.subject;
    if (need.tool == tools::Tool::kTransit) tc.to_poi_id = need.other;
  }
  return tc;
}

bool is_blocking(const Need& need) { return need.tool != tools::Tool::kReviews; }

std::optional<tools::ToolCall> select_tool(const PlanState& state) {
  if (state.pending.empty()) return std::nullopt;
  return call_for(*state.pending.begin(), state.t);
}

PlanState update_plan(PlanState state, const Observation& obs) {
  const Need need = need_of(obs.request);
  if (tools::tool_of(obs.payload) != need.tool) {
    throw Error("protocol violation: " + describe(need) + " answered with a " +
                std::string(tools::to_string(tools::tool_of(obs.payload))) + " payload");
  }
  if (need.tool != tools::Tool::kMapLocate) {
    const auto [subject, other] = payload_subject(obs.payload);
    if (subject != need.subject || other != need.other) {
      throw Error("protocol violation: payload for " + describe(need) + " names " + subject);
    }
  }
  if (state.resolved.contains(need)) {
    ++state.t;
    return state;
  }
  if (!state.pending.contains(need)) {
    throw Error("protocol violation: observation for unrequested need " + describe(need));
  }
  state.pending.erase(need);
  state.resolved.emplace(need, obs);

  auto candidate = [&](const std::string& id) -> Poi* {
    auto it = std::find_if(state.draft.candidates.begin(), state.draft.candidates.end(),
                           [&](const Poi& p) { return p.id == id; });
    return it == state.draft.candidates.end() ? nullptr : &*it;
  };
  if (const auto* h = std::get_if<tools::HoursInfo>(&obs.payload)) {
    if (Poi* p = candidate(h->poi_id)) p->hours = h->hours;
  } else if (const auto* pr = std::get_if<tools::PriceInfo>(&obs.payload)) {
    if (Poi* p = candidate(pr->poi_id)) p->price = pr->price;
  } else if (const auto* tr = std::get_if<tools::TransitInfo>(&obs.payload)) {
    state.draft.travel_edges[{tr->from, tr->to}] = tr->minutes;
  }
  ++state.t;
  return state;
}

PlanState mark_unresolvable(PlanState state, const Need& need) {
  if (!state.pending.contains(need)) {
    throw Error("protocol violation: " + describe(need) + " is not pending");
  }
  state.pending.erase(need);
  state.unresolvable.insert(need);
  ++state.t;
  return state;
}

void to_json(Json& j, const Need& v) {
  j = Json{{"tool", tools::to_string(v.tool)}, {"subject", v.subject}};
  if (!v.other.empty()) j["other"] = v.other;
}

void from_json(const Json& j, Need& v) {
  auto tool = tools::parse_tool(j.at("tool").get<std::string>());
  if (!tool) throw RecordError("unknown tool '" + j.at("tool").get<std::string>() + "'");
  v.tool = *tool;
  v.subject = j.at("subject").get<std::string>();
  v.other = j.value("other", "");
}

void to_json(Json& j, const Observation& v) {
  j = Json{{"request", v.request}, {"payload", tools::payload_to_json(v.payload)}, {"step", v.step}};
}

void from_json(const Json& j, Observation& v) {
  v.request = j.at("request").get<tools::ToolCall>();
  v.payload = tools::payload_from_json(j.at("payload"));
  v.step = j.at("step").get<int>();
}

void to_json(Json& j, const PlanState& v) {
  Json resolved = Json::array();
  for (const auto& [need, obs] : v.resolved) resolved.push_back(Json{{"need", need}, {"observation", obs}});
  j = Json{{"t", v.t},
           {"resolved", resolved},
           {"pending", Json(std::vector<Need>(v.pending.begin(), v.pending.end()))},
           {"unresolvable", Json(std::vector<Need>(v.unresolvable.begin(), v.unresolvable.end()))},
           {"draft", v.draft},
           {"chain", v.chain},
           {"days", v.days},
           {"excluded", v.excluded}};
}

void from_json(const Json& j, PlanState& v) {
  v.t = j.at("t").get<int>();
  v.resolved.clear();
  for (const auto& e : j.at("resolved")) {
    v.resolved.emplace(e.at("need").get<Need>(), e.at("observation").get<Observation>());
  }
  const auto pending = j.at("pending").get<std::vector<Need>>();
  v.pending = {pending.begin(), pending.end()};
  const auto unresolvable = j.at("unresolvable").get<std::vector<Need>>();
  v.unresolvable = {unresolvable.begin(), unresolvable.end()};
  v.draft = j.at("draft").get<plan::PlanInstance>();
  v.chain = j.at("chain").get<CoTChain>();
  v.days = j.at("days").get<int>();
  v.excluded = j.at("excluded").get<std::set<std::string>>();
}

}  // namespace travelkit::agent
