#include "travelkit/cot/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "travelkit/bench/normalize.hpp"
#include "travelkit/cot/loss.hpp"

namespace travelkit::cot {

std::vector<std::string> step_tokens(const ReasoningStep& step) {
  auto tokens = bench::normalized_tokens(step.text);
  for (const auto& r : step.refs) tokens.push_back("ref:" + r);
  std::visit(
      [&tokens](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, DistanceClaim>) {
          tokens.push_back("dist:" + std::to_string(std::llround(p.meters)));
        } else if constexpr (std::is_same_v<P, WindowClaim>) {
          tokens.push_back(p.window ? "window:" + std::to_string(p.window->start) + "-" +
                                          std::to_string(p.window->end)
                                    : std::string("window:none"));
        } else if constexpr (std::is_same_v<P, SumClaim>) {
          tokens.push_back("sum:" + std::to_string(p.total) + p.currency);
        }
      },
      step.payload);
  return tokens;
}

double step_f1(const ReasoningStep& a, const ReasoningStep& b) {
  const auto ta = step_tokens(a);
  const auto tb = step_tokens(b);
  if (ta.empty() && tb.empty()) return 1.0;
  std::map<std::string, int> counts;
  for (const auto& t : ta) ++counts[t];
  std::size_t overlap = 0;
  for (const auto& t : tb) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return 2.0 * static_cast<double>(overlap) / static_cast<double>(ta.size() + tb.size());
}

namespace {

double align(std::span<const ReasoningStep> gold, std::span<const ReasoningStep> pred) {
  const std::size_t m = gold.size(), n = pred.size();
  if (m == 0 && n == 0) return 1.0;
  if (m == 0 || n == 0) return 0.0;
  struct Pair {
    double score;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double gap = static_cast<double>(i > j ? i - j : j - i);
      const double s = step_f1(gold[i], pred[j]) / (1.0 + gap);
      if (s > 0.0) pairs.push_back({s, i, j});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& a, const Pair& b) { return a.score > b.score; });
  std::vector<bool> gold_used(m, false), pred_used(n, false);
  double total = 0.0;
  for (const auto& p : pairs) {
    if (gold_used[p.i] || pred_used[p.j]) continue;
    gold_used[p.i] = pred_used[p.j] = true;
    total += p.score;
  }
  return total / static_cast<double>(std::max(m, n));
}

}  // namespace

double component_similarity(std::span<const ReasoningStep> gold,
                            std::span<const ReasoningStep> pred) {
  return 0.5 * (align(gold, pred) + align(pred, gold));
}

double chain_similarity(const CoTChain& gold, const CoTChain& pred) {
  return (component_similarity(gold.spatial, pred.spatial) +
          component_similarity(gold.temporal, pred.temporal) +
          component_similarity(gold.practical, pred.practical)) /
         3.0;
}

double chain_loss(const CoTChain& gold, const CoTChain& pred) {
  return 1.0 - chain_similarity(gold, pred);
}

}  // namespace travelkit::cot
