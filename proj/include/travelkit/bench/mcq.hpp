#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "travelkit/core/error.hpp"
#include "travelkit/core/records.hpp"
#include "travelkit/core/types.hpp"
#include "travelkit/forge/poi_store.hpp"

namespace travelkit::bench {

inline constexpr std::size_t kOptionCount = 4;

struct McqItem {
  std::string qa_id;
  std::string question;
  std::array<std::string, kOptionCount> options;
  int correct_index = 0;
  Modality modality = Modality::kText;
  std::string category;
  bool operator==(const McqItem&) const = default;
};

class McqError : public Error {
 public:
  using Error::Error;
};

// Converts a free-form pair into a four-option item. Distractors come from
// POIs sharing category and city with the gold POI, then same category, then
// any POI; each distractor uses the candidate POI's answer to a parallel
// question when the pool has one, its name otherwise.
McqItem build_mcq(const QaPair& qa, const forge::PoiStore& store, std::span<const QaPair> pool,
                  std::uint64_t seed);

std::vector<McqItem> convert_mcq(std::span<const QaPair> qa, const forge::PoiStore& store,
                                 std::span<const QaPair> pool, std::uint64_t seed);

// Empty when the item satisfies every structural invariant.
std::vector<std::string> check_item(const McqItem& item);

void to_json(nlohmann::json& j, const McqItem& v);
void from_json(const nlohmann::json& j, McqItem& v);

}  // namespace travelkit::bench
