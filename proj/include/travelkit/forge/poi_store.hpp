#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "travelkit/core/error.hpp"
#include "travelkit/core/types.hpp"

namespace travelkit::forge {

class IngestError : public Error {
 public:
  using Error::Error;
};

// Immutable collection of validated POIs, sorted by id, with secondary
// indexes by city and by category.
class PoiStore {
 public:
  PoiStore() = default;
  // Throws IngestError on duplicate ids. Does not re-validate records.
  explicit PoiStore(std::vector<Poi> pois);

  const Poi* find(std::string_view id) const;
  const Poi& at(std::string_view id) const;
  const std::vector<Poi>& all() const { return pois_; }
  std::size_t size() const { return pois_.size(); }
  bool empty() const { return pois_.empty(); }

  std::vector<const Poi*> in_city(std::string_view city) const;
  std::vector<const Poi*> in_category(std::string_view category) const;
  // Distinct city names, sorted.
  std::vector<std::string> cities() const;

 private:
  std::vector<Poi> pois_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_city_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_category_;
};

// Decodes and validates one record per line. Rejects malformed lines, invalid
// POIs and duplicate ids, naming the offending line(s).
PoiStore ingest_pois(std::span<const std::string> lines);
PoiStore ingest_pois_file(const std::filesystem::path& path);

}  // namespace travelkit::forge
