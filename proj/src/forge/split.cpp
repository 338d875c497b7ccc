#include "travelkit/forge/split.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "travelkit/core/error.hpp"
#include "travelkit/core/hash.hpp"

namespace travelkit::forge {

std::string orphan_key(const QaPair& qa) {
  return qa.source_fact_id ? "fact:" + *qa.source_fact_id : "qa:" + qa.id;
}

std::map<std::string, Split> rank_partition(std::vector<std::string> keys, double ratio,
                                            std::uint64_t seed) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<std::pair<std::uint64_t, std::string>> ranked;
  ranked.reserve(keys.size());
  for (auto& k : keys) ranked.emplace_back(stable_hash(k, seed), std::move(k));
  std::sort(ranked.begin(), ranked.end());
  const auto n_train =
      static_cast<std::size_t>(std::floor(ratio * static_cast<double>(ranked.size()) + 0.5));
  std::map<std::string, Split> out;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    out.emplace(ranked[i].second, i < n_train ? Split::kTrain : Split::kTest);
  }
  return out;
}

Split SplitAssignment::of(const QaPair& qa) const {
  if (qa.poi_id) {
    auto it = by_poi.find(*qa.poi_id);
    if (it == by_poi.end()) throw Error("QA '" + qa.id + "' references unassigned POI '" + *qa.poi_id + "'");
    return it->second;
  }
  auto it = by_orphan.find(orphan_key(qa));
  if (it == by_orphan.end()) throw Error("QA '" + qa.id + "' has no split unit");
  return it->second;
}

std::optional<Split> SplitAssignment::of(const CotRecord& cot) const {
  for (const auto* part : {&cot.chain.spatial, &cot.chain.temporal, &cot.chain.practical}) {
    for (const auto& step : *part) {
      for (const auto& ref : step.refs) {
        auto it = by_poi.find(ref);
        if (it != by_poi.end() && it->second == Split::kTest) return std::nullopt;
      }
    }
  }
  return Split::kTrain;
}

SplitAssignment split_dataset(const PoiStore& store, std::span<const QaPair> qa,
                              const SplitConfig& config) {
  if (store.empty()) throw Error("cannot split an empty POI store");
  if (!(config.train_ratio > 0.0 && config.train_ratio < 1.0)) {
    throw Error("train ratio must be in (0, 1)");
  }
  std::vector<std::string> poi_ids;
  for (const auto& p : store.all()) poi_ids.push_back(p.id);
  std::vector<std::string> orphans;
  for (const auto& q : qa) {
    if (!q.poi_id) orphans.push_back(orphan_key(q));
  }
  SplitAssignment out;
  out.by_poi = rank_partition(std::move(poi_ids), config.train_ratio, config.seed);
  // Orphans get a different salt so they are not correlated with POI ranks.
  out.by_orphan = rank_partition(std::move(orphans), config.train_ratio, splitmix64(config.seed));
  return out;
}

SplitResult apply_split(std::vector<QaPair> qa, std::vector<CotRecord> cot,
                        const SplitAssignment& assignment) {
  SplitResult out;
  for (auto& q : qa) q.split = assignment.of(q);
  out.qa = std::move(qa);
  for (auto& c : cot) {
    c.split = assignment.of(c);
    if (c.split) out.cot.push_back(std::move(c));
    else out.dropped_cot.push_back(std::move(c));
  }
  return out;
}

std::vector<std::string> disjointness_violations(std::span<const QaPair> qa,
                                                 std::span<const CotRecord> cot) {
  std::map<std::string, std::set<Split>> labels;
  std::set<std::string> unlabeled;
  for (const auto& q : qa) {
    if (!q.poi_id) continue;
    if (q.split) labels[*q.poi_id].insert(*q.split);
    else unlabeled.insert(*q.poi_id);
  }
  for (const auto& c : cot) {
    for (const auto* part : {&c.chain.spatial, &c.chain.temporal, &c.chain.practical}) {
      for (const auto& step : *part) {
        for (const auto& ref : step.refs) {
          if (c.split) labels[ref].insert(*c.split);
        }
      }
    }
  }
  std::set<std::string> bad;
  for (const auto& [poi, set] : labels) {
    if (set.size() > 1) bad.insert(poi);
  }
  // A POI with both labeled and unlabeled records is also split across sets.
  for (const auto& poi : unlabeled) {
    if (labels.contains(poi)) bad.insert(poi);
  }
  std::vector<std::string> out(bad.begin(), bad.end());
  return out;
}

}  // namespace travelkit::forge
