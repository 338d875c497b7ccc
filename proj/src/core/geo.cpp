#include "travelkit/core/geo.hpp"

#include <cmath>
#include <numbers>

namespace travelkit {

double great_circle_meters(const GeoPoint& a, const GeoPoint& b) {
  if (a == b) return 0.0;
  constexpr double kRad = std::numbers::pi / 180.0;
  const double lat1 = a.lat() * kRad;
  const double lat2 = b.lat() * kRad;
  const double dlat = lat2 - lat1;
  const double dlon = (b.lon() - a.lon()) * kRad;
  const double s = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1) * std::cos(lat2) * std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusMeters * std::asin(std::min(1.0, std::sqrt(s)));
}

}  // namespace travelkit
