#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "travelkit/core/records.hpp"
#include "travelkit/forge/poi_store.hpp"

namespace travelkit::tools {

struct TransitEdge {
  std::string from;
  std::string to;
  int minutes = 0;
  bool operator==(const TransitEdge&) const = default;
};

struct Review {
  std::string poi_id;
  double rating = 0.0;  // 1..5
  std::string text;
  bool operator==(const Review&) const = default;
};

// A name the locator understands. City entries carry no poi_id; landmark
// entries do. image, when set, is an image descriptor that identifies the
// landmark (the reference recognizer's lookup table).
struct GazetteerEntry {
  std::string name;
  std::string city;
  std::optional<std::string> poi_id;
  std::optional<std::string> image;
  bool operator==(const GazetteerEntry&) const = default;
};

// Resilience knobs, all off by default. failure_rate draws per request id
// from a seeded hash, so injected failures are reproducible.
struct ToolConfig {
  std::set<std::string> offline;
  int latency_ms = 0;
  double failure_rate = 0.0;
  std::uint64_t seed = 0;
};

// One city's worth of service data. Directory layout:
//   pois.jsonl            Poi records
//   transit_edges.jsonl   {"from","to","minutes"}
//   reviews.jsonl         {"poi_id","rating","text"}
//   gazetteer.jsonl       {"name","city","poi_id"?,"image"?}
//   tools.json            optional ToolConfig
// Only pois.jsonl is required. Immutable after load.
class FixtureStore {
 public:
  FixtureStore() = default;
  FixtureStore(forge::PoiStore pois, std::vector<TransitEdge> edges, std::vector<Review> reviews,
               std::vector<GazetteerEntry> gazetteer, ToolConfig config = {});
  static FixtureStore load(const std::filesystem::path& dir);

  const forge::PoiStore& pois() const { return pois_; }
  const std::vector<GazetteerEntry>& gazetteer() const { return gazetteer_; }
  const ToolConfig& config() const { return config_; }
  std::optional<int> edge(std::string_view from, std::string_view to) const;
  std::vector<Review> reviews_of(std::string_view poi_id) const;
  // Cities named by the gazetteer or by any POI, sorted.
  std::vector<std::string> cities() const;
  // Place name -> city: every city names itself, and gazetteer entries
  // without a poi_id add aliases such as districts.
  std::map<std::string, std::string> place_names() const;
  // image descriptor -> poi_id, from gazetteer entries carrying an image.
  std::map<std::string, std::string> image_table() const;

 private:
  forge::PoiStore pois_;
  std::map<std::pair<std::string, std::string>, int> edges_;
  std::map<std::string, std::vector<Review>, std::less<>> reviews_;
  std::vector<GazetteerEntry> gazetteer_;
  ToolConfig config_;
};

void to_json(Json& j, const TransitEdge& v);
void from_json(const Json& j, TransitEdge& v);
void to_json(Json& j, const Review& v);
void from_json(const Json& j, Review& v);
void to_json(Json& j, const GazetteerEntry& v);
void from_json(const Json& j, GazetteerEntry& v);
void to_json(Json& j, const ToolConfig& v);
void from_json(const Json& j, ToolConfig& v);

}  // namespace travelkit::tools
