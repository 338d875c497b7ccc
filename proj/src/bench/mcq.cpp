#include "travelkit/bench/mcq.hpp"

#include <algorithm>
#include <set>

#include "travelkit/bench/normalize.hpp"
#include "travelkit/core/hash.hpp"

namespace travelkit::bench {
namespace {

// Two pairs ask the same kind of question when they share modality,
// image question type, augmentation topic and fact-derived-ness.
bool parallel(const QaPair& a, const QaPair& b) {
  return a.modality == b.modality && a.vl_type == b.vl_type && a.topic == b.topic &&
         a.source_fact_id.has_value() == b.source_fact_id.has_value();
}

std::string distractor_text(const Poi& poi, const QaPair& gold, std::span<const QaPair> pool) {
  const QaPair* best = nullptr;
  for (const auto& q : pool) {
    if (q.poi_id == poi.id && parallel(q, gold) && (!best || q.id < best->id)) best = &q;
  }
  return best ? best->answer : poi.name;
}

}  // namespace

McqItem build_mcq(const QaPair& qa, const forge::PoiStore& store, std::span<const QaPair> pool,
                  std::uint64_t seed) {
  const Poi* gold_poi = qa.poi_id ? store.find(*qa.poi_id) : nullptr;
  if (qa.poi_id && !gold_poi) throw McqError(qa.id + ": unknown POI '" + *qa.poi_id + "'");
  const std::optional<std::string> category = gold_poi ? std::optional(gold_poi->category) : qa.category;
  const std::optional<std::string> city = gold_poi ? std::optional(gold_poi->city) : std::nullopt;
  const std::uint64_t item_seed = stable_hash(qa.id, seed);

  std::vector<const Poi*> tiers[3];
  for (const auto& p : store.all()) {
    if (gold_poi && p.id == gold_poi->id) continue;
    const bool same_cat = category && p.category == *category;
    const bool same_city = city && p.city == *city;
    if (same_cat && same_city) tiers[0].push_back(&p);
    else if (same_cat) tiers[1].push_back(&p);
    else tiers[2].push_back(&p);
  }

  const std::string gold_norm = normalize_text(qa.answer);
  std::set<std::string> used = {gold_norm};
  std::vector<std::string> distractors;
  auto offer = [&](const std::string& text) {
    if (distractors.size() == kOptionCount - 1) return;
    auto norm = normalize_text(text);
    if (norm.empty() || !used.insert(norm).second) return;
    distractors.push_back(text);
  };

  for (auto& tier : tiers) {
    std::sort(tier.begin(), tier.end(), [&](const Poi* a, const Poi* b) {
      const auto ha = stable_hash(a->id, item_seed);
      const auto hb = stable_hash(b->id, item_seed);
      return ha != hb ? ha < hb : a->id < b->id;
    });
    for (const Poi* p : tier) offer(distractor_text(*p, qa, pool));
  }
  if (distractors.size() < kOptionCount - 1) {
    // Last resort: answers to parallel questions that have no POI.
    std::vector<const QaPair*> extra;
    for (const auto& q : pool) {
      if (!q.poi_id && q.id != qa.id && parallel(q, qa)) extra.push_back(&q);
    }
    std::sort(extra.begin(), extra.end(), [&](const QaPair* a, const QaPair* b) {
      const auto ha = stable_hash(a->id, item_seed);
      const auto hb = stable_hash(b->id, item_seed);
      return ha != hb ? ha < hb : a->id < b->id;
    });
    for (const QaPair* q : extra) offer(q->answer);
  }
  if (distractors.size() < kOptionCount - 1) {
    throw McqError(qa.id + ": fewer than 3 distinct distractor candidates");
  }

  std::array<std::string, kOptionCount> options = {qa.answer, distractors[0], distractors[1],
                                                   distractors[2]};
  std::array<int, kOptionCount> origin = {0, 1, 2, 3};
  SplitMixRng rng(splitmix64(item_seed));
  for (std::size_t i = kOptionCount - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(options[i], options[j]);
    std::swap(origin[i], origin[j]);
  }
  McqItem item;
  item.qa_id = qa.id;
  item.question = qa.question;
  item.options = std::move(options);
  item.correct_index = static_cast<int>(std::find(origin.begin(), origin.end(), 0) - origin.begin());
  item.modality = qa.modality;
  item.category = category.value_or("");
  return item;
}

std::vector<McqItem> convert_mcq(std::span<const QaPair> qa, const forge::PoiStore& store,
                                 std::span<const QaPair> pool, std::uint64_t seed) {
  std::vector<McqItem> out;
  out.reserve(qa.size());
  for (const auto& q : qa) out.push_back(build_mcq(q, store, pool, seed));
  return out;
}

std::vector<std::string> check_item(const McqItem& item) {
  std::vector<std::string> problems;
  if (item.correct_index < 0 || item.correct_index >= static_cast<int>(kOptionCount)) {
    problems.push_back("correct index out of range");
  }
  std::set<std::string> seen;
  for (const auto& o : item.options) {
    auto norm = normalize_text(o);
    if (norm.empty()) problems.push_back("empty option");
    else if (!seen.insert(norm).second) problems.push_back("options not distinct: '" + o + "'");
  }
  return problems;
}

void to_json(nlohmann::json& j, const McqItem& v) {
  j = nlohmann::json{{"qa_id", v.qa_id},
                     {"question", v.question},
                     {"options", v.options},
                     {"correct_index", v.correct_index},
                     {"modality", std::string(to_string(v.modality))},
                     {"category", v.category}};
}

void from_json(const nlohmann::json& j, McqItem& v) {
  v.qa_id = j.at("qa_id").get<std::string>();
  v.question = j.at("question").get<std::string>();
  v.options = j.at("options").get<std::array<std::string, kOptionCount>>();
  v.correct_index = j.at("correct_index").get<int>();
  auto m = parse_modality(j.at("modality").get<std::string>());
  if (!m) throw RecordError("unknown modality");
  v.modality = *m;
  v.category = j.value("category", std::string{});
}

}  // namespace travelkit::bench
