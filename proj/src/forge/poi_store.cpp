#include "travelkit/forge/poi_store.hpp"

#include <algorithm>
#include <fstream>

#include "travelkit/core/records.hpp"
#include "travelkit/core/validate.hpp"

namespace travelkit::forge {

PoiStore::PoiStore(std::vector<Poi> pois) : pois_(std::move(pois)) {
  std::sort(pois_.begin(), pois_.end(),
            [](const Poi& a, const Poi& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < pois_.size(); ++i) {
    const auto& p = pois_[i];
    if (!by_id_.emplace(p.id, i).second) throw IngestError("duplicate POI id '" + p.id + "'");
    by_city_[p.city].push_back(i);
    by_category_[p.category].push_back(i);
  }
}

const Poi* PoiStore::find(std::string_view id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &pois_[it->second];
}

const Poi& PoiStore::at(std::string_view id) const {
  const Poi* p = find(id);
  if (!p) throw Error("unknown POI '" + std::string(id) + "'");
  return *p;
}

namespace {
std::vector<const Poi*> collect(const std::vector<Poi>& pois,
                                const std::map<std::string, std::vector<std::size_t>, std::less<>>& index,
                                std::string_view key) {
  std::vector<const Poi*> out;
  auto it = index.find(key);
  if (it == index.end()) return out;
  for (auto i : it->second) out.push_back(&pois[i]);
  return out;
}
}  // namespace

std::vector<const Poi*> PoiStore::in_city(std::string_view city) const {
  return collect(pois_, by_city_, city);
}

std::vector<const Poi*> PoiStore::in_category(std::string_view category) const {
  return collect(pois_, by_category_, category);
}

std::vector<std::string> PoiStore::cities() const {
  std::vector<std::string> out;
  for (const auto& [city, _] : by_city_) out.push_back(city);
  return out;
}

PoiStore ingest_pois(std::span<const std::string> lines) {
  std::vector<Poi> pois;
  std::map<std::string, std::size_t> first_line;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line_no = i + 1;
    const auto& line = lines[i];
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Poi poi;
    try {
      poi = decode_record<Poi>(line);
    } catch (const std::exception& e) {
      throw IngestError("line " + std::to_string(line_no) + ": malformed POI record: " + e.what());
    }
    auto verdict = validate_poi(poi);
    if (!verdict.ok()) {
      std::string msg = "line " + std::to_string(line_no) + ": invalid POI '" + poi.id + "':";
      for (const auto& v : verdict.violations) msg += " " + v + ";";
      throw IngestError(msg);
    }
    auto [it, inserted] = first_line.emplace(poi.id, line_no);
    if (!inserted) {
      throw IngestError("duplicate POI id '" + poi.id + "' at lines " +
                        std::to_string(it->second) + " and " + std::to_string(line_no));
    }
    pois.push_back(std::move(poi));
  }
  return PoiStore(std::move(pois));
}

PoiStore ingest_pois_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path.string());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return ingest_pois(lines);
}

}  // namespace travelkit::forge
