#include "travelkit/plan/feasibility.hpp"

#include <cmath>
#include <set>

#include "travelkit/core/error.hpp"
#include "travelkit/plan/solver.hpp"

namespace travelkit::plan {

Verdict feasible(const Itinerary& it, const PlanInstance& inst) {
  Verdict v;
  std::set<std::string> seen;
  Money cost{0, inst.budget.currency};
  const Poi* prev = nullptr;
  const Visit* prev_visit = nullptr;
  for (std::size_t k = 0; k < it.visits.size(); ++k) {
    const auto& visit = it.visits[k];
    const Poi* poi = inst.find(visit.poi_id);
    if (!poi) throw Error("itinerary visits unknown POI '" + visit.poi_id + "'");
    const std::string where = "visit " + std::to_string(k) + " (" + poi->id + "): ";

    if (!seen.insert(poi->id).second) v.add(where + "repeated visit");
    if (visit.end - visit.start != poi->visit_duration) v.add(where + "duration");
    if (!on_grid(visit.start) || !on_grid(visit.end)) v.add(where + "off 5-minute grid");

    bool in_hours = false;
    for (const auto& w : poi->windows_on(inst.weekday)) {
      auto clipped = window_overlap(w, inst.day_window);
      in_hours |= clipped && clipped->contains(TimeWindow{visit.start, visit.end});
    }
    if (!in_hours) v.add(where + "hours");

    if (prev) {
      if (visit.start < prev_visit->end) {
        v.add(where + "overlaps previous visit");
      } else if (visit.start - prev_visit->end < inst.travel_minutes(*prev, *poi)) {
        v.add(where + "travel time");
      }
    }

    for (const auto& flag : inst.accessibility) {
      if (!poi->accessibility.contains(flag)) v.add(where + "accessibility (" + flag + ")");
    }
    if (poi->price.currency != inst.budget.currency) {
      v.add(where + "currency " + poi->price.currency);
    } else {
      cost = cost.plus(inst.cost_of(*poi));
    }
    prev = poi;
    prev_visit = &visit;
  }
  if (cost.amount > inst.budget.amount) {
    v.add("budget: total " + format_money(cost) + " exceeds " + format_money(inst.budget));
  }
  if (!it.visits.empty() && it.total_cost != cost) v.add("reported total cost differs from visits");
  if (std::fabs(it.total_utility - canonical_utility(it, inst)) > 1e-9) {
    v.add("reported total utility differs from visits");
  }
  for (const auto& id : inst.locked) {
    if (!seen.contains(id)) v.add("locked POI '" + id + "' missing");
  }
  return v;
}

}  // namespace travelkit::plan
