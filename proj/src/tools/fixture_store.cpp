#include "travelkit/tools/fixture_store.hpp"

#include <algorithm>

#include "travelkit/core/jsonl.hpp"

namespace travelkit::tools {

FixtureStore::FixtureStore(forge::PoiStore pois, std::vector<TransitEdge> edges,
                           std::vector<Review> reviews, std::vector<GazetteerEntry> gazetteer,
                           ToolConfig config)
    : pois_(std::move(pois)), gazetteer_(std::move(gazetteer)), config_(std::move(config)) {
  for (const auto& e : edges) {
    if (e.minutes < 0) throw Error("transit edge " + e.from + " -> " + e.to + ": negative minutes");
    edges_[{e.from, e.to}] = e.minutes;
  }
  for (auto& r : reviews) {
    if (r.rating < 1.0 || r.rating > 5.0) {
      throw Error("review of " + r.poi_id + ": rating outside 1..5");
    }
    reviews_[r.poi_id].push_back(std::move(r));
  }
  if (config_.failure_rate < 0.0 || config_.failure_rate > 1.0) {
    throw Error("tools config: failure_rate outside [0, 1]");
  }
  if (config_.latency_ms < 0) throw Error("tools config: latency_ms is negative");
}

FixtureStore FixtureStore::load(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error("fixture directory not found: " + dir.string());
  auto pois = forge::ingest_pois_file(dir / "pois.jsonl");
  auto optional_file = [&](const char* name) { return fs::exists(dir / name); };
  std::vector<TransitEdge> edges;
  std::vector<Review> reviews;
  std::vector<GazetteerEntry> gazetteer;
  ToolConfig config;
  if (optional_file("transit_edges.jsonl")) edges = read_jsonl<TransitEdge>(dir / "transit_edges.jsonl");
  if (optional_file("reviews.jsonl")) reviews = read_jsonl<Review>(dir / "reviews.jsonl");
  if (optional_file("gazetteer.jsonl")) gazetteer = read_jsonl<GazetteerEntry>(dir / "gazetteer.jsonl");
  if (optional_file("tools.json")) {
    try {
      config = Json::parse(read_file(dir / "tools.json")).get<ToolConfig>();
    } catch (const Json::exception& e) {
      throw Error("tools.json: " + std::string(e.what()));
    }
  }
  return FixtureStore(std::move(pois), std::move(edges), std::move(reviews), std::move(gazetteer),
                      std::move(config));
}

std::optional<int> FixtureStore::edge(std::string_view from, std::string_view to) const {
  auto it = edges_.find({std::string(from), std::string(to)});
  if (it == edges_.end()) return std::nullopt;
  return it->second;
}

std::vector<Review> FixtureStore::reviews_of(std::string_view poi_id) const {
  auto it = reviews_.find(poi_id);
  return it == reviews_.end() ? std::vector<Review>{} : it->second;
}

std::vector<std::string> FixtureStore::cities() const {
  std::set<std::string> out;
  for (const auto& g : gazetteer_) out.insert(g.city);
  for (const auto& c : pois_.cities()) out.insert(c);
  return {out.begin(), out.end()};
}

std::map<std::string, std::string> FixtureStore::place_names() const {
  std::map<std::string, std::string> out;
  for (const auto& c : cities()) out.emplace(c, c);
  for (const auto& g : gazetteer_) {
    if (!g.poi_id) out.emplace(g.name, g.city);
  }
  return out;
}

std::map<std::string, std::string> FixtureStore::image_table() const {
  std::map<std::string, std::string> out;
  for (const auto& g : gazetteer_) {
    if (g.image && g.poi_id) out.emplace(*g.image, *g.poi_id);
  }
  return out;
}

void to_json(Json& j, const TransitEdge& v) {
  j = Json{{"from", v.from}, {"to", v.to}, {"minutes", v.minutes}};
}
void from_json(const Json& j, TransitEdge& v) {
  j.at("from").get_to(v.from);
  j.at("to").get_to(v.to);
  j.at("minutes").get_to(v.minutes);
}

void to_json(Json& j, const Review& v) {
  j = Json{{"poi_id", v.poi_id}, {"rating", v.rating}, {"text", v.text}};
}
void from_json(const Json& j, Review& v) {
  j.at("poi_id").get_to(v.poi_id);
  j.at("rating").get_to(v.rating);
  v.text = j.value("text", "");
}

void to_json(Json& j, const GazetteerEntry& v) {
  j = Json{{"name", v.name}, {"city", v.city}};
  if (v.poi_id) j["poi_id"] = *v.poi_id;
  if (v.image) j["image"] = *v.image;
}
void from_json(const Json& j, GazetteerEntry& v) {
  j.at("name").get_to(v.name);
  j.at("city").get_to(v.city);
  v.poi_id = j.contains("poi_id") ? std::optional(j.at("poi_id").get<std::string>()) : std::nullopt;
  v.image = j.contains("image") ? std::optional(j.at("image").get<std::string>()) : std::nullopt;
}

void to_json(Json& j, const ToolConfig& v) {
  j = Json{{"offline", v.offline},
           {"latency_ms", v.latency_ms},
           {"failure_rate", v.failure_rate},
           {"seed", v.seed}};
}
void from_json(const Json& j, ToolConfig& v) {
  v.offline = j.value("offline", std::set<std::string>{});
  v.latency_ms = j.value("latency_ms", 0);
  v.failure_rate = j.value("failure_rate", 0.0);
  v.seed = j.value("seed", std::uint64_t{0});
}

}  // namespace travelkit::tools
