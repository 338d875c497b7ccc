#pragma once

#include <optional>
#include <string>
#include <vector>

#include "travelkit/core/types.hpp"
#include "travelkit/core/validate.hpp"

namespace travelkit::cot {

// What the reasoner sees: the query text and/or an image, the candidate POIs
// and the constraints extracted from the query.
struct QueryContext {
  std::string query;
  std::optional<ImageRef> visual;
  std::vector<Poi> candidates;
  ConstraintSet constraints;

  const Poi* find(std::string_view id) const;
  bool has_input() const { return !query.empty() || visual.has_value(); }
};

// Earliest opening window (clipped to the day window) on the constraints'
// weekday that is long enough for a full visit; nullopt when none fits.
std::optional<TimeWindow> visit_window(const Poi& poi, const ConstraintSet& constraints);

// Checks structure (all three parts present), reference resolution, and that
// every numeric claim agrees with the context. Reports all violations.
Verdict validate_chain(const CoTChain& chain, const QueryContext& ctx);

// Tolerance for distance claims, in meters.
inline constexpr double kDistanceToleranceMeters = 1.0;

}  // namespace travelkit::cot
