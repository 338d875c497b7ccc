#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "travelkit/core/records.hpp"
#include "travelkit/core/types.hpp"

namespace travelkit::agent {

struct QuerySpec {
  std::optional<std::string> destination;
  std::optional<int> days;
  std::optional<Money> budget;
  std::optional<int> group_size;
  std::optional<int> weekday;
  std::set<std::string> accessibility;
  // The query asks for the best/top-rated places, so reviews matter.
  bool quality_ranking = false;
  std::string remainder;
  // Image descriptor supplied with the query, and the recognizer's guess.
  std::optional<std::string> image;
  std::optional<std::string> landmark;

  // True when nothing at all was extracted.
  bool empty() const;
  bool operator==(const QuerySpec&) const = default;
};

// Maps an image descriptor to a POI id. Real recognition is out of scope;
// the reference is a lookup table.
class LandmarkRecognizer {
 public:
  virtual ~LandmarkRecognizer() = default;
  virtual std::optional<std::string> recognize(std::string_view image) const = 0;
};

class LookupRecognizer : public LandmarkRecognizer {
 public:
  explicit LookupRecognizer(std::map<std::string, std::string> table) : table_(table.begin(), table.end()) {}
  std::optional<std::string> recognize(std::string_view image) const override;

 private:
  std::map<std::string, std::string, std::less<>> table_;
};

// Grammar-based extraction. Understands day counts ("3 days", "two-day"),
// money ("$500", "€80", "1,200 JPY", "40 dollars"), group sizes ("for 2
// people", "family of four", "solo", "couple"), weekdays, accessibility
// words (wheelchair, step-free, elderly/senior) and quality words (best,
// top-rated, reviews). Place names map to their city ("Brooklyn" -> "New
// York") and match as whole words, longest name first. Whatever is not
// consumed is the remainder.
QuerySpec analyze_query(std::string_view message, const std::optional<std::string>& visual,
                        const std::map<std::string, std::string>& places,
                        const LandmarkRecognizer* recognizer);
// Each city names itself.
QuerySpec analyze_query(std::string_view message, const std::optional<std::string>& visual,
                        std::span<const std::string> cities,
                        const LandmarkRecognizer* recognizer);

void to_json(Json& j, const QuerySpec& v);
void from_json(const Json& j, QuerySpec& v);

}  // namespace travelkit::agent
