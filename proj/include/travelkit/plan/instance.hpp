#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "travelkit/core/records.hpp"
#include "travelkit/core/types.hpp"
#include "travelkit/core/validate.hpp"

namespace travelkit::plan {

inline constexpr double kWalkingSpeedKmh = 4.5;
// Travel time used for a leg that is known not to be traversable.
inline constexpr int kUnreachableMinutes = 100000;

// Walking time along the great circle, rounded up to the 5-minute grid.
int default_travel_time(const Poi& a, const Poi& b);

struct PlanInstance {
  std::vector<Poi> candidates;
  // Known travel times in minutes keyed by (from, to). A missing direction
  // falls back to the reverse edge, then to default_travel_time.
  std::map<std::pair<std::string, std::string>, int> travel_edges;
  TimeWindow day_window{540, 1260};
  int weekday = 0;
  Money budget;
  int group_size = 1;
  std::set<std::string> accessibility;
  // POIs that must appear in the itinerary.
  std::set<std::string> locked;

  const Poi* find(std::string_view id) const;
  int travel_minutes(const Poi& from, const Poi& to) const;
  Money cost_of(const Poi& poi) const { return poi.price.times(group_size); }
  bool operator==(const PlanInstance&) const = default;
};

Verdict validate_instance(const PlanInstance& inst);

struct Visit {
  std::string poi_id;
  int start = 0;
  int end = 0;
  bool operator==(const Visit&) const = default;
};

struct Itinerary {
  std::vector<Visit> visits;
  Money total_cost;
  double total_utility = 0.0;

  bool empty() const { return visits.empty(); }
  int finish() const { return visits.empty() ? 0 : visits.back().end; }
  bool contains(std::string_view poi_id) const;
  bool operator==(const Itinerary&) const = default;
};

void to_json(Json& j, const PlanInstance& v);
void from_json(const Json& j, PlanInstance& v);
void to_json(Json& j, const Visit& v);
void from_json(const Json& j, Visit& v);
void to_json(Json& j, const Itinerary& v);
void from_json(const Json& j, Itinerary& v);

}  // namespace travelkit::plan
