#include "travelkit/core/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "travelkit/core/error.hpp"

namespace travelkit {

GeoPoint GeoPoint::from_degrees(double lat, double lon) {
  return from_micro(std::llround(lat * kScale), std::llround(lon * kScale));
}

bool GeoPoint::in_bounds() const {
  return lat_e6_ >= -90 * kScale && lat_e6_ <= 90 * kScale && lon_e6_ >= -180 * kScale &&
         lon_e6_ <= 180 * kScale;
}

bool on_grid(int minutes) { return minutes % kTimeGrid == 0; }

std::optional<TimeWindow> window_overlap(const TimeWindow& a, const TimeWindow& b) {
  const int start = std::max(a.start, b.start);
  const int end = std::min(a.end, b.end);
  if (start > end) return std::nullopt;
  return TimeWindow{start, end};
}

std::string format_clock(int minutes) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d", minutes / 60, minutes % 60);
  return buf;
}

Money Money::plus(const Money& other) const {
  if (currency != other.currency) {
    throw Error("currency mismatch: " + currency + " vs " + other.currency);
  }
  return Money{amount + other.amount, currency};
}

Money Money::times(std::int64_t factor) const { return Money{amount * factor, currency}; }

int minor_unit_digits(std::string_view currency) {
  if (currency == "JPY" || currency == "KRW" || currency == "VND") return 0;
  return 2;
}

std::string format_money(const Money& m) {
  const int digits = minor_unit_digits(m.currency);
  if (digits == 0) return std::to_string(m.amount) + " " + m.currency;
  const std::int64_t whole = m.amount / 100;
  const std::int64_t cents = m.amount % 100;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%lld.%02lld %s", static_cast<long long>(whole),
                static_cast<long long>(cents < 0 ? -cents : cents), m.currency.c_str());
  return buf;
}

bool is_known_category(std::string_view category) {
  return std::find(kCategories.begin(), kCategories.end(), category) != kCategories.end();
}

bool is_known_image_kind(std::string_view kind) {
  return std::find(kImageKinds.begin(), kImageKinds.end(), kind) != kImageKinds.end();
}

std::vector<TimeWindow> Poi::windows_on(int weekday) const {
  std::vector<TimeWindow> out;
  for (const auto& h : hours) {
    if (h.weekday == weekday) out.push_back(h.window);
  }
  return out;
}

std::string_view to_string(Modality m) {
  return m == Modality::kText ? "text" : "vision-language";
}

std::string_view to_string(VlType t) {
  switch (t) {
    case VlType::kIdentification: return "identification";
    case VlType::kExperience: return "experience";
    case VlType::kPractical: return "practical";
  }
  return "";
}

std::string_view to_string(Split s) { return s == Split::kTrain ? "train" : "test"; }

std::optional<Modality> parse_modality(std::string_view s) {
  if (s == "text") return Modality::kText;
  if (s == "vision-language") return Modality::kVisionLanguage;
  return std::nullopt;
}

std::optional<VlType> parse_vl_type(std::string_view s) {
  if (s == "identification") return VlType::kIdentification;
  if (s == "experience") return VlType::kExperience;
  if (s == "practical") return VlType::kPractical;
  return std::nullopt;
}

std::optional<Split> parse_split(std::string_view s) {
  if (s == "train") return Split::kTrain;
  if (s == "test") return Split::kTest;
  return std::nullopt;
}

}  // namespace travelkit
