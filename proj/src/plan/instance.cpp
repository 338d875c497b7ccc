#include "travelkit/plan/instance.hpp"

#include <cmath>

#include "travelkit/core/geo.hpp"

namespace travelkit::plan {

int default_travel_time(const Poi& a, const Poi& b) {
  const double meters = great_circle_meters(a.location, b.location);
  if (meters == 0.0) return 0;
  const double minutes = meters / 1000.0 / kWalkingSpeedKmh * 60.0;
  // Slack of ~0.3 s absorbs micro-degree quantization of the coordinates.
  const double slots = std::ceil(minutes / kTimeGrid - 1e-3);
  return static_cast<int>(slots) * kTimeGrid;
}

const Poi* PlanInstance::find(std::string_view id) const {
  for (const auto& p : candidates) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

int PlanInstance::travel_minutes(const Poi& from, const Poi& to) const {
  if (from.id == to.id) return 0;
  if (auto it = travel_edges.find({from.id, to.id}); it != travel_edges.end()) return it->second;
  if (auto it = travel_edges.find({to.id, from.id}); it != travel_edges.end()) return it->second;
  return default_travel_time(from, to);
}

bool Itinerary::contains(std::string_view poi_id) const {
  for (const auto& v : visits) {
    if (v.poi_id == poi_id) return true;
  }
  return false;
}

Verdict validate_instance(const PlanInstance& inst) {
  Verdict v;
  std::set<std::string> ids;
  for (const auto& p : inst.candidates) {
    if (!ids.insert(p.id).second) v.add("duplicate candidate id '" + p.id + "'");
    for (const auto& pv : validate_poi(p).violations) v.add(p.id + ": " + pv);
  }
  for (const auto& [edge, minutes] : inst.travel_edges) {
    if (minutes < 0) v.add("negative travel time " + edge.first + "->" + edge.second);
    if (edge.first == edge.second && minutes != 0) v.add("non-zero self travel time for " + edge.first);
  }
  for (const auto& w : validate_window(inst.day_window).violations) v.add("day window: " + w);
  if (inst.group_size < 1) v.add("group size must be >= 1");
  if (inst.budget.amount < 0) v.add("budget negative");
  if (inst.weekday < 0 || inst.weekday > 6) v.add("weekday out of range");
  for (const auto& id : inst.locked) {
    if (!ids.contains(id)) v.add("locked POI '" + id + "' is not a candidate");
  }
  return v;
}

void to_json(Json& j, const PlanInstance& v) {
  Json edges = Json::array();
  for (const auto& [edge, minutes] : v.travel_edges) {
    edges.push_back(Json{{"from", edge.first}, {"to", edge.second}, {"minutes", minutes}});
  }
  j = Json{{"candidates", v.candidates},   {"travel_edges", edges},
           {"day_window", v.day_window},   {"weekday", v.weekday},
           {"budget", v.budget},           {"group_size", v.group_size},
           {"accessibility", v.accessibility}, {"locked", v.locked}};
}

void from_json(const Json& j, PlanInstance& v) {
  v.candidates = j.at("candidates").get<std::vector<Poi>>();
  v.travel_edges.clear();
  for (const auto& e : j.value("travel_edges", Json::array())) {
    v.travel_edges[{e.at("from").get<std::string>(), e.at("to").get<std::string>()}] =
        e.at("minutes").get<int>();
  }
  v.day_window = j.value("day_window", TimeWindow{540, 1260});
  v.weekday = j.value("weekday", 0);
  v.budget = j.at("budget").get<Money>();
  v.group_size = j.value("group_size", 1);
  v.accessibility = j.value("accessibility", std::set<std::string>{});
  v.locked = j.value("locked", std::set<std::string>{});
}

void to_json(Json& j, const Visit& v) {
  j = Json{{"poi_id", v.poi_id}, {"start", v.start}, {"end", v.end}};
}

void from_json(const Json& j, Visit& v) {
  v.poi_id = j.at("poi_id").get<std::string>();
  v.start = j.at("start").get<int>();
  v.end = j.at("end").get<int>();
}

void to_json(Json& j, const Itinerary& v) {
  j = Json{{"visits", v.visits}, {"total_cost", v.total_cost}, {"total_utility", v.total_utility}};
}

void from_json(const Json& j, Itinerary& v) {
  v.visits = j.at("visits").get<std::vector<Visit>>();
  v.total_cost = j.at("total_cost").get<Money>();
  v.total_utility = j.at("total_utility").get<double>();
}

}  // namespace travelkit::plan
