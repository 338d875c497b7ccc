#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "travelkit/core/types.hpp"
#include "travelkit/forge/poi_store.hpp"

namespace travelkit::forge {

struct CompositionConfig {
  int questions_per_fact = 5;
  // When set, checks |vision-language QAs| = images * this. Unset disables the
  // check (the product is still reported).
  std::optional<int> vl_types_per_image = 3;
};

struct SplitCounts {
  std::size_t all = 0;
  std::size_t train = 0;
  std::size_t test = 0;

  void add(const std::optional<Split>& s);
  bool operator==(const SplitCounts&) const = default;
};

struct IdentityCheck {
  std::string name;
  long long expected = 0;
  long long actual = 0;
  bool pass() const { return expected == actual; }
};

struct CompositionStats {
  SplitCounts text;
  SplitCounts vision_language;
  SplitCounts cot;
  SplitCounts total;
  std::map<std::string, SplitCounts> by_category;  // all six categories present
  std::map<std::string, SplitCounts> by_visual;    // map, street
  SplitCounts cot_spatial;
  SplitCounts cot_temporal;
  SplitCounts cot_practical;
  std::size_t facts = 0;
  std::size_t fact_questions = 0;
  std::size_t augmented = 0;
  std::size_t images = 0;
  std::size_t image_qa_product = 0;
  double mean_text_answer_words = 0.0;
  double mean_vl_answer_words = 0.0;
  std::vector<IdentityCheck> identities;

  bool identities_pass() const;
  std::string to_text() const;
};

CompositionStats composition_report(const PoiStore& store, std::span<const QaPair> qa,
                                    std::span<const CotRecord> cot,
                                    const CompositionConfig& config = {});

}  // namespace travelkit::forge
