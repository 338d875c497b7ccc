#pragma once

#include <string>
#include <vector>

#include "travelkit/core/types.hpp"

namespace travelkit {

// Outcome of a check that reports every problem it finds.
struct Verdict {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  bool mentions(std::string_view needle) const;
  void add(std::string v) { violations.push_back(std::move(v)); }
};

Verdict validate_window(const TimeWindow& w);
Verdict validate_poi(const Poi& poi);
Verdict validate_qa(const QaPair& qa);

}  // namespace travelkit
