#pragma once

#include <optional>
#include <string_view>

#include "travelkit/bench/mcq.hpp"

namespace travelkit::bench {

struct MatcherConfig {
  double jaccard_threshold = 0.5;
};

// Token-set Jaccard similarity of two normalized strings.
double token_jaccard(std::string_view a, std::string_view b);

// Maps a free-form response to an option index. Exact normalized match or
// containment of exactly one option wins outright; otherwise the unique
// best Jaccard score at or above the threshold. Ties and misses give nullopt.
std::optional<int> match_answer(std::string_view response, const McqItem& item,
                                const MatcherConfig& config = {});

}  // namespace travelkit::bench
