#pragma once

#include "travelkit/core/types.hpp"

namespace travelkit {

inline constexpr double kEarthRadiusMeters = 6371000.0;

// Great-circle distance (haversine) in meters.
double great_circle_meters(const GeoPoint& a, const GeoPoint& b);

}  // namespace travelkit
