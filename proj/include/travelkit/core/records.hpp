#pragma once

#include <nlohmann/json.hpp>

#include "travelkit/core/types.hpp"

// Canonical record encoding. Objects serialize with sorted keys, which fixes
// the field order; optional fields are omitted when empty.
namespace travelkit {

using Json = nlohmann::json;

void to_json(Json& j, const GeoPoint& v);
void from_json(const Json& j, GeoPoint& v);
void to_json(Json& j, const TimeWindow& v);
void from_json(const Json& j, TimeWindow& v);
void to_json(Json& j, const Money& v);
void from_json(const Json& j, Money& v);
void to_json(Json& j, const OpeningHours& v);
void from_json(const Json& j, OpeningHours& v);
void to_json(Json& j, const ImageRef& v);
void from_json(const Json& j, ImageRef& v);
void to_json(Json& j, const Poi& v);
void from_json(const Json& j, Poi& v);
void to_json(Json& j, const QaPair& v);
void from_json(const Json& j, QaPair& v);
void to_json(Json& j, const ReasoningStep& v);
void from_json(const Json& j, ReasoningStep& v);
void to_json(Json& j, const CoTChain& v);
void from_json(const Json& j, CoTChain& v);
void to_json(Json& j, const CotRecord& v);
void from_json(const Json& j, CotRecord& v);
void to_json(Json& j, const ConstraintSet& v);
void from_json(const Json& j, ConstraintSet& v);

// Single-line canonical text for a record.
template <class T>
std::string encode_record(const T& v) {
  Json j = v;
  return j.dump();
}

template <class T>
T decode_record(std::string_view line) {
  return Json::parse(line).get<T>();
}

}  // namespace travelkit
