#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "travelkit/core/types.hpp"
#include "travelkit/forge/poi_store.hpp"

namespace travelkit::forge {

struct SplitConfig {
  double train_ratio = 0.8;
  std::uint64_t seed = 0;
};

// POI-level train/test assignment. Records without a POI are grouped by their
// source fact (or own id) and assigned as independent units.
struct SplitAssignment {
  std::map<std::string, Split> by_poi;
  std::map<std::string, Split> by_orphan;

  Split of(const QaPair& qa) const;
  // CoT records go to train only; nullopt when one of their POIs is in test.
  std::optional<Split> of(const CotRecord& cot) const;
};

// Key that places a POI-less record into its independent split unit.
std::string orphan_key(const QaPair& qa);

// Keys ordered by seeded stable hash; the first round(ratio * n) go to train.
std::map<std::string, Split> rank_partition(std::vector<std::string> keys, double ratio,
                                            std::uint64_t seed);

SplitAssignment split_dataset(const PoiStore& store, std::span<const QaPair> qa,
                              const SplitConfig& config);

// Labels every record; CoT records touching a test POI are returned in
// dropped_cot instead.
struct SplitResult {
  std::vector<QaPair> qa;
  std::vector<CotRecord> cot;
  std::vector<CotRecord> dropped_cot;
};
SplitResult apply_split(std::vector<QaPair> qa, std::vector<CotRecord> cot,
                        const SplitAssignment& assignment);

// Every POI whose derived records carry more than one split label.
std::vector<std::string> disjointness_violations(std::span<const QaPair> qa,
                                                 std::span<const CotRecord> cot);

}  // namespace travelkit::forge
