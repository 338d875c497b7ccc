#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "travelkit/core/types.hpp"
#include "travelkit/forge/poi_store.hpp"

namespace travelkit::forge {

// manual_queue is only ever set when both automatic layers passed.
struct VerificationVerdict {
  bool rule_pass = false;
  bool semantic_pass = false;
  bool manual_queue = false;
  std::vector<std::string> reasons;

  bool accepted() const { return rule_pass && semantic_pass; }
};

// Second verification layer: is the answer consistent with the POI record?
// Returns the list of inconsistencies (empty when consistent).
class ConsistencyChecker {
 public:
  virtual ~ConsistencyChecker() = default;
  virtual std::vector<std::string> check(const QaPair& qa, const Poi& poi,
                                         const PoiStore& context) const = 0;
};

// Stated opening/closing times, prices and city names found in the answer
// must match the POI record.
class KeyedFieldChecker : public ConsistencyChecker {
 public:
  std::vector<std::string> check(const QaPair& qa, const Poi& poi,
                                 const PoiStore& context) const override;
};

struct VerifyConfig {
  std::size_t max_question_chars = 400;
  std::size_t max_answer_chars = 2000;
  std::size_t min_question_chars = 8;
  double manual_rate = 0.05;
  std::uint64_t seed = 0;
};

// Rule layer, then semantic layer, then manual sampling. A later layer only
// runs when the earlier ones passed.
VerificationVerdict verify_qa(const QaPair& qa, const PoiStore& context,
                              const VerifyConfig& config = {},
                              const ConsistencyChecker* checker = nullptr);

}  // namespace travelkit::forge
