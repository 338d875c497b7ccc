#include "travelkit/core/records.hpp"

#include <cmath>

#include "travelkit/core/error.hpp"

namespace travelkit {
namespace {

template <class T>
void put_opt(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get_opt(const Json& j, const char* key, std::optional<T>& out) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    out.reset();
  } else {
    out = it->get<T>();
  }
}

template <class Enum, class Parse>
Enum parse_enum(const Json& j, const char* key, Parse parse) {
  const auto text = j.at(key).get<std::string>();
  auto parsed = parse(text);
  if (!parsed) throw RecordError(std::string("unknown ") + key + " '" + text + "'");
  return *parsed;
}

}  // namespace

void to_json(Json& j, const GeoPoint& v) { j = Json{{"lat", v.lat()}, {"lon", v.lon()}}; }

void from_json(const Json& j, GeoPoint& v) {
  v = GeoPoint::from_degrees(j.at("lat").get<double>(), j.at("lon").get<double>());
}

void to_json(Json& j, const TimeWindow& v) { j = Json::array({v.start, v.end}); }

void from_json(const Json& j, TimeWindow& v) {
  if (!j.is_array() || j.size() != 2) throw RecordError("time window must be [start, end]");
  v.start = j[0].get<int>();
  v.end = j[1].get<int>();
}

void to_json(Json& j, const Money& v) { j = Json{{"amount", v.amount}, {"currency", v.currency}}; }

void from_json(const Json& j, Money& v) {
  v.amount = j.at("amount").get<std::int64_t>();
  v.currency = j.at("currency").get<std::string>();
}

void to_json(Json& j, const OpeningHours& v) {
  j = Json{{"weekday", v.weekday}, {"window", v.window}};
}

void from_json(const Json& j, OpeningHours& v) {
  v.weekday = j.at("weekday").get<int>();
  v.window = j.at("window").get<TimeWindow>();
}

void to_json(Json& j, const ImageRef& v) { j = Json{{"uri", v.uri}, {"kind", v.kind}}; }

void from_json(const Json& j, ImageRef& v) {
  v.uri = j.at("uri").get<std::string>();
  v.kind = j.at("kind").get<std::string>();
}

void to_json(Json& j, const Poi& v) {
  j = Json{{"id", v.id},
           {"name", v.name},
           {"category", v.category},
           {"city", v.city},
           {"location", v.location},
           {"hours", v.hours},
           {"price", v.price},
           {"visit_duration", v.visit_duration},
           {"utility", v.utility},
           {"accessibility", v.accessibility},
           {"images", v.images}};
}

void from_json(const Json& j, Poi& v) {
  v.id = j.at("id").get<std::string>();
  v.name = j.at("name").get<std::string>();
  v.category = j.at("category").get<std::string>();
  v.city = j.at("city").get<std::string>();
  v.location = j.at("location").get<GeoPoint>();
  v.hours = j.value("hours", std::vector<OpeningHours>{});
  v.price = j.at("price").get<Money>();
  v.visit_duration = j.at("visit_duration").get<int>();
  v.utility = j.value("utility", 0.0);
  v.accessibility = j.value("accessibility", std::set<std::string>{});
  v.images = j.value("images", std::vector<ImageRef>{});
}

void to_json(Json& j, const QaPair& v) {
  j = Json{{"id", v.id},
           {"modality", std::string(to_string(v.modality))},
           {"question", v.question},
           {"answer", v.answer}};
  put_opt(j, "poi_id", v.poi_id);
  if (v.vl_type) j["vl_type"] = std::string(to_string(*v.vl_type));
  put_opt(j, "source_fact_id", v.source_fact_id);
  if (v.split) j["split"] = std::string(to_string(*v.split));
  put_opt(j, "image_uri", v.image_uri);
  put_opt(j, "topic", v.topic);
  put_opt(j, "category", v.category);
}

void from_json(const Json& j, QaPair& v) {
  v.id = j.at("id").get<std::string>();
  v.modality = parse_enum<Modality>(j, "modality", parse_modality);
  v.question = j.at("question").get<std::string>();
  v.answer = j.at("answer").get<std::string>();
  get_opt(j, "poi_id", v.poi_id);
  v.vl_type.reset();
  if (j.contains("vl_type")) v.vl_type = parse_enum<VlType>(j, "vl_type", parse_vl_type);
  get_opt(j, "source_fact_id", v.source_fact_id);
  v.split.reset();
  if (j.contains("split")) v.split = parse_enum<Split>(j, "split", parse_split);
  get_opt(j, "image_uri", v.image_uri);
  get_opt(j, "topic", v.topic);
  get_opt(j, "category", v.category);
}

void to_json(Json& j, const ReasoningStep& v) {
  j = Json{{"text", v.text}, {"refs", v.refs}};
  std::visit(
      [&j](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, DistanceClaim>) {
          j["payload"] = Json{{"kind", "distance"}, {"meters", p.meters}};
        } else if constexpr (std::is_same_v<P, WindowClaim>) {
          Json w{{"kind", "window"}};
          w["window"] = p.window ? Json(*p.window) : Json(nullptr);
          j["payload"] = w;
        } else if constexpr (std::is_same_v<P, SumClaim>) {
          j["payload"] =
              Json{{"kind", "sum"}, {"terms", p.terms}, {"total", p.total}, {"currency", p.currency}};
        }
      },
      v.payload);
}

void from_json(const Json& j, ReasoningStep& v) {
  v.text = j.at("text").get<std::string>();
  v.refs = j.value("refs", std::vector<std::string>{});
  v.payload = std::monostate{};
  auto it = j.find("payload");
  if (it == j.end() || it->is_null()) return;
  const auto kind = it->at("kind").get<std::string>();
  if (kind == "distance") {
    v.payload = DistanceClaim{it->at("meters").get<double>()};
  } else if (kind == "window") {
    WindowClaim w;
    if (!it->at("window").is_null()) w.window = it->at("window").get<TimeWindow>();
    v.payload = w;
  } else if (kind == "sum") {
    v.payload = SumClaim{it->at("terms").get<std::vector<std::int64_t>>(),
                         it->at("total").get<std::int64_t>(),
                         it->at("currency").get<std::string>()};
  } else {
    throw RecordError("unknown payload kind '" + kind + "'");
  }
}

void to_json(Json& j, const CoTChain& v) {
  j = Json{{"spatial", v.spatial}, {"temporal", v.temporal}, {"practical", v.practical}};
}

void from_json(const Json& j, CoTChain& v) {
  v.spatial = j.at("spatial").get<std::vector<ReasoningStep>>();
  v.temporal = j.at("temporal").get<std::vector<ReasoningStep>>();
  v.practical = j.at("practical").get<std::vector<ReasoningStep>>();
}

void to_json(Json& j, const CotRecord& v) {
  j = Json{{"id", v.id}, {"query", v.query}, {"chain", v.chain}, {"answer", v.answer}};
  if (v.split) j["split"] = std::string(to_string(*v.split));
}

void from_json(const Json& j, CotRecord& v) {
  v.id = j.at("id").get<std::string>();
  v.query = j.value("query", std::string{});
  v.chain = j.at("chain").get<CoTChain>();
  v.answer = j.value("answer", std::string{});
  v.split.reset();
  if (j.contains("split")) v.split = parse_enum<Split>(j, "split", parse_split);
}

void to_json(Json& j, const ConstraintSet& v) {
  j = Json{{"day_window", v.day_window},
           {"weekday", v.weekday},
           {"group_size", v.group_size},
           {"accessibility", v.accessibility}};
  put_opt(j, "budget", v.budget);
}

void from_json(const Json& j, ConstraintSet& v) {
  v.day_window = j.value("day_window", TimeWindow{540, 1260});
  v.weekday = j.value("weekday", 0);
  v.group_size = j.value("group_size", 1);
  v.accessibility = j.value("accessibility", std::set<std::string>{});
  get_opt(j, "budget", v.budget);
}

}  // namespace travelkit
