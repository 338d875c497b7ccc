#pragma once

#include "travelkit/core/validate.hpp"
#include "travelkit/plan/instance.hpp"

namespace travelkit::plan {

// Checks every visit against the POI's hours on the instance weekday (clipped
// to the day window), travel times between consecutive visits, total cost
// against the budget, required accessibility flags and locked POIs. Reports
// all violations. Throws Error for a visit to a POI not in the instance.
Verdict feasible(const Itinerary& it, const PlanInstance& inst);

}  // namespace travelkit::plan
