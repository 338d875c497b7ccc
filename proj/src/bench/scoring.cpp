#include "travelkit/bench/scoring.hpp"

#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

namespace travelkit::bench {

double round_half_up(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double scaled = std::fabs(x) * scale;
  const double eps = 1e-9 * std::max(1.0, scaled);
  const double r = std::floor(scaled + 0.5 + eps) / scale;
  return std::signbit(x) ? -r : r;
}

ScoreWeights weights_from_counts(std::size_t text_items, std::size_t vqa_items) {
  const auto total = text_items + vqa_items;
  if (total == 0) return {};
  return {static_cast<double>(text_items) / total, static_cast<double>(vqa_items) / total};
}

double full_score(double text_score, double vqa_score, const ScoreWeights& w) {
  return w.text * text_score + w.vqa * vqa_score;
}

ScoreReport score_run(const Predictions& predictions, std::span<const McqItem> items,
                      std::optional<ScoreWeights> explicit_weights) {
  std::set<std::string> known;
  for (const auto& item : items) known.insert(item.qa_id);
  for (const auto& [id, _] : predictions) {
    if (!known.contains(id)) throw Error("prediction for unknown item '" + id + "'");
  }

  Tally text, vqa;
  ScoreReport r;
  for (const auto& item : items) {
    auto it = predictions.find(item.qa_id);
    if (it == predictions.end()) throw Error("no prediction entry for item '" + item.qa_id + "'");
    const bool correct = it->second && *it->second == item.correct_index;
    Tally& t = item.modality == Modality::kText ? text : vqa;
    ++t.items;
    t.correct += correct;
    auto& c = r.by_category[item.category.empty() ? "(none)" : item.category];
    ++c.items;
    c.correct += correct;
  }
  r.text_count = text.items;
  r.vqa_count = vqa.items;
  r.text_score = text.percent();
  r.vqa_score = vqa.percent();
  r.weights = explicit_weights.value_or(weights_from_counts(text.items, vqa.items));
  r.full_score = full_score(r.text_score, r.vqa_score, r.weights);
  return r;
}

std::string ScoreReport::to_text() const {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1);
  out << "text " << round_half_up(text_score) << " (" << text_count << " items)\n";
  out << "vqa  " << round_half_up(vqa_score) << " (" << vqa_count << " items)\n";
  out << "full " << round_half_up(full_score) << std::setprecision(3) << " (weights " << weights.text
      << " / " << weights.vqa << ")\n";
  out << std::setprecision(1);
  for (const auto& [cat, t] : by_category) {
    out << "  " << cat << ": " << round_half_up(t.percent()) << " (" << t.correct << "/" << t.items
        << ")\n";
  }
  return out.str();
}

double relative_change(double pre, double fine) {
  if (pre == 0.0) throw Error("relative change undefined for a zero baseline");
  return 100.0 * (fine - pre) / pre;
}

double improvement_delta(double pre, double fine) {
  return round_half_up(relative_change(pre, fine));
}

}  // namespace travelkit::bench
