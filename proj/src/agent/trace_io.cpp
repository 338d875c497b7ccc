#include "travelkit/agent/session.hpp"

namespace travelkit::agent {

void to_json(Json& j, const SessionConfig& v) {
  j = Json{{"max_steps", v.max_steps},
           {"beam_width", v.beam_width},
           {"seed", v.seed},
           {"shortlist_size", v.shortlist_size}};
}

void from_json(const Json& j, SessionConfig& v) {
  const SessionConfig d;
  v.max_steps = j.value("max_steps", d.max_steps);
  v.beam_width = j.value("beam_width", d.beam_width);
  v.seed = j.value("seed", d.seed);
  v.shortlist_size = j.value("shortlist_size", d.shortlist_size);
}

void to_json(Json& j, const Refinement& v) {
  j = Json::object();
  if (v.budget) j["budget"] = *v.budget;
  if (v.lock) j["lock"] = *v.lock;
  if (v.exclude) j["exclude"] = *v.exclude;
  if (v.day_window) j["day_window"] = *v.day_window;
}

void from_json(const Json& j, Refinement& v) {
  if (!j.is_object()) throw RecordError("refinement must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "budget" && key != "lock" && key != "exclude" && key != "day_window") {
      throw RecordError("unknown refinement field '" + key + "'");
    }
  }
  v.budget = j.contains("budget") ? std::optional(j.at("budget").get<Money>()) : std::nullopt;
  v.lock = j.contains("lock") ? std::optional(j.at("lock").get<std::string>()) : std::nullopt;
  v.exclude = j.contains("exclude") ? std::optional(j.at("exclude").get<std::string>()) : std::nullopt;
  v.day_window =
      j.contains("day_window") ? std::optional(j.at("day_window").get<TimeWindow>()) : std::nullopt;
}

void to_json(Json& j, const TraceEntry& v) { j = Json{{"call", v.call}, {"response", v.response}}; }

void from_json(const Json& j, TraceEntry& v) {
  v.call = j.at("call").get<tools::ToolCall>();
  v.response = j.at("response").get<tools::ToolResponse>();
}

void to_json(Json& j, const SessionTrace& v) {
  j = Json{{"query", v.query},
           {"config", v.config},
           {"spec", v.spec},
           {"calls", v.calls},
           {"refinements", v.refinements},
           {"state", v.state},
           {"days", v.days},
           {"outcome", to_string(v.outcome)},
           {"notes", v.notes},
           {"violations", v.violations}};
  if (v.image) j["image"] = *v.image;
}

void from_json(const Json& j, SessionTrace& v) {
  v.query = j.at("query").get<std::string>();
  v.image = j.contains("image") ? std::optional(j.at("image").get<std::string>()) : std::nullopt;
  v.config = j.at("config").get<SessionConfig>();
  v.spec = j.at("spec").get<QuerySpec>();
  v.calls = j.at("calls").get<std::vector<TraceEntry>>();
  v.refinements = j.at("refinements").get<std::vector<Refinement>>();
  v.state = j.at("state").get<PlanState>();
  v.days = j.at("days").get<std::vector<plan::Itinerary>>();
  auto outcome = parse_outcome(j.at("outcome").get<std::string>());
  if (!outcome) throw RecordError("unknown outcome '" + j.at("outcome").get<std::string>() + "'");
  v.outcome = *outcome;
  v.notes = j.at("notes").get<std::vector<std::string>>();
  v.violations = j.at("violations").get<std::vector<std::string>>();
}

}  // namespace travelkit::agent
