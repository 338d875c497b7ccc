#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>

#include "travelkit/bench/mcq.hpp"

namespace travelkit::bench {

// Half away from zero at the given number of decimals, tolerant of binary
// representation error (76.05 rounds to 76.1).
double round_half_up(double x, int decimals = 1);

struct ScoreWeights {
  double text = 0.0;
  double vqa = 0.0;
};

struct Tally {
  std::size_t items = 0;
  std::size_t correct = 0;
  double percent() const { return items == 0 ? 0.0 : 100.0 * correct / items; }
};

// Scores are percentages kept at full precision; display() rounds.
struct ScoreReport {
  double text_score = 0.0;
  double vqa_score = 0.0;
  double full_score = 0.0;
  ScoreWeights weights;
  std::size_t text_count = 0;
  std::size_t vqa_count = 0;
  std::map<std::string, Tally> by_category;

  std::string to_text() const;
};

// text/vqa weights proportional to the item counts of each modality.
ScoreWeights weights_from_counts(std::size_t text_items, std::size_t vqa_items);

double full_score(double text_score, double vqa_score, const ScoreWeights& w);

using Predictions = std::map<std::string, std::optional<int>>;

// Every item needs a prediction entry; entries for unknown items are errors.
ScoreReport score_run(const Predictions& predictions, std::span<const McqItem> items,
                      std::optional<ScoreWeights> explicit_weights = std::nullopt);

// Relative change in percent, 100 * (fine - pre) / pre, unrounded.
double relative_change(double pre, double fine);
// Same, rounded half-up to one decimal.
double improvement_delta(double pre, double fine);

}  // namespace travelkit::bench
