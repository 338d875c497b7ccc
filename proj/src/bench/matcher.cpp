#include "travelkit/bench/matcher.hpp"

#include <set>

#include "travelkit/bench/normalize.hpp"

namespace travelkit::bench {
namespace {

double jaccard_sets(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& t : a) inter += b.count(t);
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

std::set<std::string> token_set(std::string_view s) {
  auto tokens = normalized_tokens(s);
  return {tokens.begin(), tokens.end()};
}

// Option text occurs in the response on token boundaries.
bool contains_phrase(const std::string& response, const std::string& option) {
  if (option.empty()) return false;
  const std::string hay = " " + response + " ";
  return hay.find(" " + option + " ") != std::string::npos;
}

}  // namespace

double token_jaccard(std::string_view a, std::string_view b) {
  return jaccard_sets(token_set(a), token_set(b));
}

std::optional<int> match_answer(std::string_view response, const McqItem& item,
                                const MatcherConfig& config) {
  const std::string norm = normalize_text(response);
  if (norm.empty()) return std::nullopt;

  std::array<std::string, kOptionCount> options;
  for (std::size_t i = 0; i < kOptionCount; ++i) options[i] = normalize_text(item.options[i]);

  for (std::size_t i = 0; i < kOptionCount; ++i) {
    if (norm == options[i]) return static_cast<int>(i);
  }
  std::optional<int> contained;
  int n_contained = 0;
  for (std::size_t i = 0; i < kOptionCount; ++i) {
    if (contains_phrase(norm, options[i])) {
      ++n_contained;
      contained = static_cast<int>(i);
    }
  }
  if (n_contained == 1) return contained;

  const auto response_tokens = token_set(norm);
  double best = -1.0;
  int best_index = -1;
  bool tie = false;
  for (std::size_t i = 0; i < kOptionCount; ++i) {
    const double s = jaccard_sets(response_tokens, token_set(options[i]));
    if (s > best) {
      best = s;
      best_index = static_cast<int>(i);
      tie = false;
    } else if (s == best) {
      tie = true;
    }
  }
  if (tie || best < config.jaccard_threshold) return std::nullopt;
  return best_index;
}

}  // namespace travelkit::bench
