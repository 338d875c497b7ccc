#include "travelkit/core/validate.hpp"

namespace travelkit {

bool Verdict::mentions(std::string_view needle) const {
  for (const auto& v : violations) {
    if (v.find(needle) != std::string::npos) return true;
  }
  return false;
}

Verdict validate_window(const TimeWindow& w) {
  Verdict v;
  if (w.start < 0 || w.start > kMinutesPerDay || w.end < 0 || w.end > kMinutesPerDay) {
    v.add("window out of day range");
  }
  if (w.start > w.end) v.add("window inverted");
  if (!on_grid(w.start) || !on_grid(w.end)) v.add("window off 5-minute grid");
  return v;
}

Verdict validate_poi(const Poi& poi) {
  Verdict v;
  if (poi.id.empty()) v.add("id empty");
  if (poi.name.empty()) v.add("name empty");
  if (!is_known_category(poi.category)) {
    v.add("category not in the closed category set: '" + poi.category + "'");
  }
  if (!poi.location.in_bounds()) v.add("location out of bounds");
  for (std::size_t i = 0; i < poi.hours.size(); ++i) {
    const auto& h = poi.hours[i];
    const std::string where = "hours[" + std::to_string(i) + "]: ";
    if (h.weekday < 0 || h.weekday > 6) v.add(where + "weekday out of range");
    for (auto& w : validate_window(h.window).violations) v.add(where + w);
  }
  if (poi.price.amount < 0) v.add("price negative");
  if (poi.price.currency.size() != 3) v.add("currency code malformed");
  if (poi.visit_duration <= 0) v.add("visit duration not positive");
  if (!on_grid(poi.visit_duration)) v.add("visit duration off 5-minute grid");
  if (!(poi.utility >= 0.0)) v.add("utility negative");
  for (std::size_t i = 0; i < poi.images.size(); ++i) {
    const auto& img = poi.images[i];
    const std::string where = "images[" + std::to_string(i) + "]: ";
    if (img.uri.empty()) v.add(where + "uri empty");
    if (!is_known_image_kind(img.kind)) v.add(where + "image kind not map/street");
  }
  return v;
}

Verdict validate_qa(const QaPair& qa) {
  Verdict v;
  if (qa.id.empty()) v.add("id empty");
  if (qa.answer.empty()) v.add("answer empty");
  const bool vl = qa.modality == Modality::kVisionLanguage;
  if (vl != qa.vl_type.has_value()) v.add("vl_type must be present iff modality is vision-language");
  return v;
}

}  // namespace travelkit
