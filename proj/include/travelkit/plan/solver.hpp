#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "travelkit/plan/instance.hpp"

namespace travelkit::plan {

inline constexpr std::size_t kDefaultBeamWidth = 8;
// Keep every partial schedule; exhaustive, for small instances only.
inline constexpr std::size_t kUnboundedBeam = 0;
inline constexpr std::size_t kBruteForceLimit = 8;

// Ranking shared by the solver and the oracle: more locked POIs, then higher
// utility, then earlier finish, then lexicographically smaller id sequence.
bool ranks_before(const Itinerary& a, const Itinerary& b, const PlanInstance& inst);

// Sum of visited utilities taken in id order, so equal sets give equal sums.
double canonical_utility(const Itinerary& it, const PlanInstance& inst);

// Beam search over partial schedules. Each expansion appends one unvisited
// candidate at its earliest feasible start. Empty when no schedule can hold
// every locked POI.
Itinerary solve(const PlanInstance& inst, std::size_t beam_width = kDefaultBeamWidth);

// Exhaustive search over every subset and ordering. Refuses n > 8.
Itinerary brute_force(const PlanInstance& inst);

// One itinerary per weekday; later days skip POIs already visited and spend
// only what is left of the budget. Locked POIs rank first on every day but
// are not enforced per day; callers check the union.
std::vector<Itinerary> solve_days(const PlanInstance& inst, std::span<const int> weekdays,
                                  std::size_t beam_width = kDefaultBeamWidth);

}  // namespace travelkit::plan
