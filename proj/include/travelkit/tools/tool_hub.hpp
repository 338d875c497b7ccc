#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "travelkit/core/records.hpp"
#include "travelkit/tools/fixture_store.hpp"

namespace travelkit::tools {

// Declaration order is also the agent's default priority order.
enum class Tool { kMapLocate, kHours, kPrice, kTransit, kReviews };

std::string_view to_string(Tool t);
std::optional<Tool> parse_tool(std::string_view s);

// Arguments by tool:
//   hours, price, reviews  poi_id
//   transit                poi_id (from), to_poi_id
//   map_locate             text and/or image
struct ToolCall {
  Tool tool = Tool::kHours;
  std::string request_id;
  std::optional<std::string> poi_id;
  std::optional<std::string> to_poi_id;
  std::optional<std::string> text;
  std::optional<std::string> image;
  auto operator<=>(const ToolCall&) const = default;
};

enum class ToolStatus { kOk, kNotFound, kBadRequest, kUnavailable };
std::string_view to_string(ToolStatus s);
std::optional<ToolStatus> parse_tool_status(std::string_view s);

struct HoursInfo {
  std::string poi_id;
  std::vector<OpeningHours> hours;
  bool operator==(const HoursInfo&) const = default;
};
struct PriceInfo {
  std::string poi_id;
  Money price;
  bool operator==(const PriceInfo&) const = default;
};
struct ReviewInfo {
  std::string poi_id;
  double mean_rating = 0.0;
  int count = 0;
  bool operator==(const ReviewInfo&) const = default;
};
struct TransitInfo {
  std::string from;
  std::string to;
  int minutes = 0;
  // false when the value is the walking-time fallback.
  bool from_table = false;
  bool operator==(const TransitInfo&) const = default;
};
struct LocateInfo {
  std::string poi_id;
  std::string city;
  bool operator==(const LocateInfo&) const = default;
};
using ToolPayload = std::variant<HoursInfo, PriceInfo, ReviewInfo, TransitInfo, LocateInfo>;

// The tool a payload type belongs to.
Tool tool_of(const ToolPayload& p);

struct ToolResponse {
  std::string request_id;
  ToolStatus status = ToolStatus::kOk;
  std::optional<ToolPayload> payload;  // present iff status is ok
  std::string message;
  bool operator==(const ToolResponse&) const = default;
};

// Pure function of (tc, fixtures) apart from injected latency.
ToolResponse call(const ToolCall& tc, const FixtureStore& fixtures);

void to_json(Json& j, const ToolCall& v);
void from_json(const Json& j, ToolCall& v);
// Payload objects carry a "tool" key naming their alternative.
Json payload_to_json(const ToolPayload& p);
ToolPayload payload_from_json(const Json& j);
void to_json(Json& j, const ToolResponse& v);
void from_json(const Json& j, ToolResponse& v);

}  // namespace travelkit::tools
