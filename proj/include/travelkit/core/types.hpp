#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace travelkit {

inline constexpr int kMinutesPerDay = 1440;
inline constexpr int kTimeGrid = 5;

// Latitude/longitude stored as integer micro-degrees so that equality is exact
// on the six-decimal representation used in records.
class GeoPoint {
 public:
  static constexpr std::int64_t kScale = 1'000'000;

  constexpr GeoPoint() = default;
  static GeoPoint from_degrees(double lat, double lon);
  static constexpr GeoPoint from_micro(std::int64_t lat_e6, std::int64_t lon_e6) {
    GeoPoint p;
    p.lat_e6_ = lat_e6;
    p.lon_e6_ = lon_e6;
    return p;
  }

  double lat() const { return static_cast<double>(lat_e6_) / kScale; }
  double lon() const { return static_cast<double>(lon_e6_) / kScale; }
  std::int64_t lat_e6() const { return lat_e6_; }
  std::int64_t lon_e6() const { return lon_e6_; }
  bool in_bounds() const;

  auto operator<=>(const GeoPoint&) const = default;

 private:
  std::int64_t lat_e6_ = 0;
  std::int64_t lon_e6_ = 0;
};

// Minutes since midnight, half-open semantics are not used: [start, end] with
// start == end allowed as a zero-length touch.
struct TimeWindow {
  int start = 0;
  int end = 0;

  int length() const { return end - start; }
  bool contains(const TimeWindow& other) const {
    return start <= other.start && other.end <= end;
  }
  auto operator<=>(const TimeWindow&) const = default;
};

bool on_grid(int minutes);

// Intersection of two valid windows, or nullopt when they do not meet.
std::optional<TimeWindow> window_overlap(const TimeWindow& a, const TimeWindow& b);

// "HH:MM"
std::string format_clock(int minutes);

// Non-negative amount in minor units of a single ISO-4217 currency.
struct Money {
  std::int64_t amount = 0;
  std::string currency = "USD";

  Money plus(const Money& other) const;   // throws on currency mismatch
  Money times(std::int64_t factor) const;
  auto operator<=>(const Money&) const = default;
};

// Number of decimal digits in the currency's minor unit (2 for most).
int minor_unit_digits(std::string_view currency);
// "15.00 USD"
std::string format_money(const Money& m);

inline constexpr std::array<std::string_view, 6> kCategories = {
    "Attractions", "Dining", "Living", "Transportation", "Cultural", "Practical"};
inline constexpr std::array<std::string_view, 2> kImageKinds = {"map", "street"};

bool is_known_category(std::string_view category);
bool is_known_image_kind(std::string_view kind);

// 0 = Monday .. 6 = Sunday.
struct OpeningHours {
  int weekday = 0;
  TimeWindow window;
  auto operator<=>(const OpeningHours&) const = default;
};

struct ImageRef {
  std::string uri;
  std::string kind;  // "map" | "street"
  auto operator<=>(const ImageRef&) const = default;
};

// Category and image kind are kept as text so that records with vocabulary
// outside the closed sets can still be decoded and reported by validate_poi.
struct Poi {
  std::string id;
  std::string name;
  std::string category;
  std::string city;
  GeoPoint location;
  std::vector<OpeningHours> hours;
  Money price;
  int visit_duration = 60;
  double utility = 0.0;
  std::set<std::string> accessibility;
  std::vector<ImageRef> images;

  // Windows open on the given weekday, in record order.
  std::vector<TimeWindow> windows_on(int weekday) const;

  bool operator==(const Poi&) const = default;
};

enum class Modality { kText, kVisionLanguage };
enum class VlType { kIdentification, kExperience, kPractical };
enum class Split { kTrain, kTest };

std::string_view to_string(Modality m);
std::string_view to_string(VlType t);
std::string_view to_string(Split s);
std::optional<Modality> parse_modality(std::string_view s);
std::optional<VlType> parse_vl_type(std::string_view s);
std::optional<Split> parse_split(std::string_view s);

struct QaPair {
  std::string id;
  std::optional<std::string> poi_id;
  Modality modality = Modality::kText;
  std::optional<VlType> vl_type;
  std::string question;
  std::string answer;
  std::optional<std::string> source_fact_id;
  std::optional<Split> split;
  // Image the question was asked about (vision-language only).
  std::optional<std::string> image_uri;
  // Augmented practical-constraint topic, e.g. "safety".
  std::optional<std::string> topic;
  // Category for records without a POI; POI records take the POI's category.
  std::optional<std::string> category;

  bool operator==(const QaPair&) const = default;
};

// Numeric claims a reasoning step can carry.
struct DistanceClaim {
  double meters = 0.0;
  bool operator==(const DistanceClaim&) const = default;
};
// nullopt window means the step reports a scheduling conflict.
struct WindowClaim {
  std::optional<TimeWindow> window;
  bool operator==(const WindowClaim&) const = default;
};
struct SumClaim {
  std::vector<std::int64_t> terms;
  std::int64_t total = 0;
  std::string currency = "USD";
  bool operator==(const SumClaim&) const = default;
};
using StepPayload = std::variant<std::monostate, DistanceClaim, WindowClaim, SumClaim>;

struct ReasoningStep {
  std::string text;
  std::vector<std::string> refs;
  StepPayload payload;
  bool operator==(const ReasoningStep&) const = default;
};

struct CoTChain {
  std::vector<ReasoningStep> spatial;
  std::vector<ReasoningStep> temporal;
  std::vector<ReasoningStep> practical;
  bool operator==(const CoTChain&) const = default;
};

// One annotated reasoning example as stored in cot.jsonl.
struct CotRecord {
  std::string id;
  std::string query;
  CoTChain chain;
  std::string answer;
  std::optional<Split> split;
  bool operator==(const CotRecord&) const = default;
};

// Constraints a plan must honour; produced by query analysis.
struct ConstraintSet {
  TimeWindow day_window{540, 1260};
  int weekday = 0;
  std::optional<Money> budget;
  int group_size = 1;
  std::set<std::string> accessibility;
  bool operator==(const ConstraintSet&) const = default;
};

}  // namespace travelkit
