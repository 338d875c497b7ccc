#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "travelkit/core/hash.hpp"
#include "travelkit/core/types.hpp"
#include "travelkit/cot/chain.hpp"
#include "travelkit/forge/generator.hpp"
#include "travelkit/forge/poi_store.hpp"
#include "travelkit/plan/instance.hpp"

namespace travelkit::testing {

std::filesystem::path fixture_dir(const std::string& name);

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

// Open every day from open to close.
Poi make_poi(const std::string& id, const std::string& category = "Attractions",
             const std::string& city = "Testville", double lat = 40.70, double lon = -73.99,
             int open = 540, int close = 1260, std::int64_t price = 1000, int duration = 60,
             double utility = 1.0);

std::vector<Poi> random_pois(SplitMixRng& rng, std::size_t n, const std::string& city,
                             const std::string& prefix = "p");

// Small orienteering instance: n POIs in a few-km box, random hours (some
// closed days, some split windows), prices, durations, a budget, occasional
// accessibility requirement, lock and explicit travel edges.
plan::PlanInstance random_instance(SplitMixRng& rng, std::size_t n);

cot::QueryContext random_context(SplitMixRng& rng, std::size_t n);

// UTF-8 text mixing ASCII, punctuation, accents, ligatures, full-width forms,
// combining marks, format characters and non-Latin scripts.
std::string random_unicode_string(SplitMixRng& rng, std::size_t max_codepoints = 24);

struct Dataset {
  forge::PoiStore store;
  std::vector<QaPair> qa;
  std::vector<CotRecord> cot;
};

// Dataset composition at 1/1000 scale, with split labels:
// 160 text (26 facts x 5 + 30 augmented; 128/32), 100 vision-language
// (map 32/8, street 48/12; 80/20), 5 CoT (train only), category cells
// 56/14, 42/10, 31/8, 21/5, 31/8, 27/7. Text answers average 45.6 words.
Dataset table1_mirror();

// Random unlabelled dataset: POIs across the six categories, fact-derived
// and augmented text QA (some without a POI), image QA, and CoT records that
// reference one to three POIs.
Dataset random_dataset(std::uint64_t seed);

}  // namespace travelkit::testing
