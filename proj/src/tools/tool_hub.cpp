#include "travelkit/tools/tool_hub.hpp"

#include <array>
#include <chrono>
#include <thread>

#include "travelkit/bench/normalize.hpp"
#include "travelkit/core/hash.hpp"
#include "travelkit/plan/instance.hpp"

namespace travelkit::tools {
namespace {

constexpr std::array<std::string_view, 5> kToolNames = {"map_locate", "hours", "price", "transit",
                                                        "reviews"};
constexpr std::array<std::string_view, 4> kStatusNames = {"ok", "not_found", "bad_request",
                                                          "unavailable"};

ToolResponse fail(const ToolCall& tc, ToolStatus status, std::string message) {
  return ToolResponse{tc.request_id, status, std::nullopt, std::move(message)};
}

ToolResponse ok(const ToolCall& tc, ToolPayload payload) {
  return ToolResponse{tc.request_id, ToolStatus::kOk, std::move(payload), ""};
}

// Empty when the call's arguments fit its tool.
std::string shape_error(const ToolCall& tc) {
  switch (tc.tool) {
    case Tool::kHours:
    case Tool::kPrice:
    case Tool::kReviews:
      if (!tc.poi_id || tc.poi_id->empty()) return "poi_id is required";
      if (tc.to_poi_id || tc.text || tc.image) return "only poi_id is accepted";
      return "";
    case Tool::kTransit:
      if (!tc.poi_id || !tc.to_poi_id) return "poi_id and to_poi_id are required";
      if (tc.text || tc.image) return "only poi_id and to_poi_id are accepted";
      return "";
    case Tool::kMapLocate:
      if (!tc.text && !tc.image) return "text or image is required";
      if (tc.poi_id || tc.to_poi_id) return "poi ids are not accepted";
      return "";
  }
  return "unknown tool";
}

bool contains_phrase(const std::string& haystack, const std::string& needle) {
  if (needle.empty()) return false;
  const std::string h = " " + haystack + " ";
  return h.find(" " + needle + " ") != std::string::npos;
}

std::optional<std::string> locate(const ToolCall& tc, const FixtureStore& fx) {
  if (tc.image) {
    auto table = fx.image_table();
    if (auto it = table.find(*tc.image); it != table.end()) return it->second;
    for (const auto& poi : fx.pois().all()) {
      for (const auto& img : poi.images) {
        if (img.uri == *tc.image) return poi.id;
      }
    }
  }
  if (tc.text) {
    const std::string text = bench::normalize_text(*tc.text);
    std::optional<std::string> best;
    std::size_t best_len = 0;
    auto consider = [&](const std::string& name, const std::string& poi_id) {
      const std::string n = bench::normalize_text(name);
      if (n.size() > best_len && contains_phrase(text, n)) {
        best = poi_id;
        best_len = n.size();
      }
    };
    for (const auto& g : fx.gazetteer()) {
      if (g.poi_id) consider(g.name, *g.poi_id);
    }
    for (const auto& poi : fx.pois().all()) consider(poi.name, poi.id);
    return best;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Tool t) { return kToolNames[static_cast<std::size_t>(t)]; }

std::optional<Tool> parse_tool(std::string_view s) {
  for (std::size_t i = 0; i < kToolNames.size(); ++i) {
    if (kToolNames[i] == s) return static_cast<Tool>(i);
  }
  return std::nullopt;
}

std::string_view to_string(ToolStatus s) { return kStatusNames[static_cast<std::size_t>(s)]; }

std::optional<ToolStatus> parse_tool_status(std::string_view s) {
  for (std::size_t i = 0; i < kStatusNames.size(); ++i) {
    if (kStatusNames[i] == s) return static_cast<ToolStatus>(i);
  }
  return std::nullopt;
}

Tool tool_of(const ToolPayload& p) {
  struct Visitor {
    Tool operator()(const HoursInfo&) const { return Tool::kHours; }
    Tool operator()(const PriceInfo&) const { return Tool::kPrice; }
    Tool operator()(const ReviewInfo&) const { return Tool::kReviews; }
    Tool operator()(const TransitInfo&) const { return Tool::kTransit; }
    Tool operator()(const LocateInfo&) const { return Tool::kMapLocate; }
  };
  return std::visit(Visitor{}, p);
}

ToolResponse call(const ToolCall& tc, const FixtureStore& fx) {
  const auto& cfg = fx.config();
  if (cfg.latency_ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(cfg.latency_ms));
  if (cfg.offline.contains(std::string(to_string(tc.tool))) || cfg.offline.contains("all")) {
    return fail(tc, ToolStatus::kUnavailable, std::string(to_string(tc.tool)) + " is offline");
  }
  if (cfg.failure_rate > 0.0) {
    const double draw =
        static_cast<double>(stable_hash(tc.request_id, cfg.seed) >> 11) * 0x1.0p-53;
    if (draw < cfg.failure_rate) return fail(tc, ToolStatus::kUnavailable, "injected failure");
  }
  if (auto err = shape_error(tc); !err.empty()) {
    return fail(tc, ToolStatus::kBadRequest, std::string(to_string(tc.tool)) + ": " + err);
  }

  if (tc.tool == Tool::kMapLocate) {
    auto id = locate(tc, fx);
    const Poi* poi = id ? fx.pois().find(*id) : nullptr;
    if (!poi) return fail(tc, ToolStatus::kNotFound, "no landmark matches");
    return ok(tc, LocateInfo{poi->id, poi->city});
  }

  const Poi* poi = fx.pois().find(*tc.poi_id);
  if (!poi) return fail(tc, ToolStatus::kNotFound, "unknown POI '" + *tc.poi_id + "'");
  switch (tc.tool) {
    case Tool::kHours:
      return ok(tc, HoursInfo{poi->id, poi->hours});
    case Tool::kPrice:
      return ok(tc, PriceInfo{poi->id, poi->price});
    case Tool::kReviews: {
      ReviewInfo info{poi->id, 0.0, 0};
      double sum = 0.0;
      for (const auto& r : fx.reviews_of(poi->id)) {
        sum += r.rating;
        ++info.count;
      }
      if (info.count > 0) info.mean_rating = sum / info.count;
      return ok(tc, info);
    }
    case Tool::kTransit: {
      const Poi* to = fx.pois().find(*tc.to_poi_id);
      if (!to) return fail(tc, ToolStatus::kNotFound, "unknown POI '" + *tc.to_poi_id + "'");
      if (auto m = fx.edge(poi->id, to->id)) return ok(tc, TransitInfo{poi->id, to->id, *m, true});
      if (auto m = fx.edge(to->id, poi->id)) return ok(tc, TransitInfo{poi->id, to->id, *m, true});
      return ok(tc, TransitInfo{poi->id, to->id, plan::default_travel_time(*poi, *to), false});
    }
    case Tool::kMapLocate:
      break;
  }
  return fail(tc, ToolStatus::kBadRequest, "unknown tool");
}

void to_json(Json& j, const ToolCall& v) {
  j = Json{{"tool", to_string(v.tool)}, {"request_id", v.request_id}};
  if (v.poi_id) j["poi_id"] = *v.poi_id;
  if (v.to_poi_id) j["to_poi_id"] = *v.to_poi_id;
  if (v.text) j["text"] = *v.text;
  if (v.image) j["image"] = *v.image;
}

void from_json(const Json& j, ToolCall& v) {
  auto tool = parse_tool(j.at("tool").get<std::string>());
  if (!tool) throw RecordError("unknown tool '" + j.at("tool").get<std::string>() + "'");
  v.tool = *tool;
  v.request_id = j.value("request_id", "");
  auto opt = [&](const char* key) {
    return j.contains(key) ? std::optional(j.at(key).get<std::string>()) : std::nullopt;
  };
  v.poi_id = opt("poi_id");
  v.to_poi_id = opt("to_poi_id");
  v.text = opt("text");
  v.image = opt("image");
}

Json payload_to_json(const ToolPayload& p) {
  struct Visitor {
    Json operator()(const HoursInfo& v) const { return Json{{"poi_id", v.poi_id}, {"hours", v.hours}}; }
    Json operator()(const PriceInfo& v) const { return Json{{"poi_id", v.poi_id}, {"price", v.price}}; }
    Json operator()(const ReviewInfo& v) const {
      return Json{{"poi_id", v.poi_id}, {"mean_rating", v.mean_rating}, {"count", v.count}};
    }
    Json operator()(const TransitInfo& v) const {
      return Json{{"from", v.from}, {"to", v.to}, {"minutes", v.minutes}, {"from_table", v.from_table}};
    }
    Json operator()(const LocateInfo& v) const { return Json{{"poi_id", v.poi_id}, {"city", v.city}}; }
  };
  Json j = std::visit(Visitor{}, p);
  j["tool"] = to_string(tool_of(p));
  return j;
}

ToolPayload payload_from_json(const Json& j) {
  auto tool = parse_tool(j.at("tool").get<std::string>());
  if (!tool) throw RecordError("unknown payload tool '" + j.at("tool").get<std::string>() + "'");
  switch (*tool) {
    case Tool::kHours:
      return HoursInfo{j.at("poi_id").get<std::string>(), j.at("hours").get<std::vector<OpeningHours>>()};
    case Tool::kPrice:
      return PriceInfo{j.at("poi_id").get<std::string>(), j.at("price").get<Money>()};
    case Tool::kReviews:
      return ReviewInfo{j.at("poi_id").get<std::string>(), j.at("mean_rating").get<double>(),
                        j.at("count").get<int>()};
    case Tool::kTransit:
      return TransitInfo{j.at("from").get<std::string>(), j.at("to").get<std::string>(),
                         j.at("minutes").get<int>(), j.at("from_table").get<bool>()};
    case Tool::kMapLocate:
      return LocateInfo{j.at("poi_id").get<std::string>(), j.at("city").get<std::string>()};
  }
  throw RecordError("unknown payload tool");
}

void to_json(Json& j, const ToolResponse& v) {
  j = Json{{"request_id", v.request_id}, {"status", to_string(v.status)}};
  if (v.payload) j["payload"] = payload_to_json(*v.payload);
  if (!v.message.empty()) j["message"] = v.message;
}

void from_json(const Json& j, ToolResponse& v) {
  v.request_id = j.at("request_id").get<std::string>();
  auto status = parse_tool_status(j.at("status").get<std::string>());
  if (!status) throw RecordError("unknown status '" + j.at("status").get<std::string>() + "'");
  v.status = *status;
  v.payload = j.contains("payload") ? std::optional(payload_from_json(j.at("payload"))) : std::nullopt;
  v.message = j.value("message", "");
  if (v.payload.has_value() != (v.status == ToolStatus::kOk)) {
    throw RecordError("payload must be present exactly when status is ok");
  }
}

}  // namespace travelkit::tools
