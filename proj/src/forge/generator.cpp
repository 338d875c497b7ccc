#include "travelkit/forge/generator.hpp"

#include <array>
#include <cctype>
#include <sstream>

namespace travelkit::forge {
namespace {

constexpr std::array<const char*, 8> kFactTemplates = {
    "What should travelers know about {}?",
    "Can you share a useful fact about {}?",
    "What is worth knowing before visiting {}?",
    "Which detail about {} helps when planning a trip?",
    "What do travel guides say about {}?",
    "Is there anything notable about {}?",
    "What practical information exists about {}?",
    "How would you describe {} to a first-time visitor?",
};

std::string fill(const char* tmpl, const std::string& subject) {
  std::string s = tmpl;
  auto pos = s.find("{}");
  if (pos != std::string::npos) s.replace(pos, 2, subject);
  return s;
}

std::string fact_subject(const GenerationRequest& req) {
  if (req.poi) return req.poi->name;
  std::istringstream in(req.fact ? req.fact->text : std::string{});
  std::string word, out;
  for (int i = 0; i < 6 && in >> word; ++i) out += (out.empty() ? "" : " ") + word;
  while (!out.empty() && (out.back() == '.' || out.back() == ',')) out.pop_back();
  return "\"" + out + "\"";
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string hours_sentence(const Poi& poi) {
  if (poi.hours.empty()) return poi.name + " does not list opening hours";
  const auto& w = poi.hours.front().window;
  return poi.name + " opens at " + format_clock(w.start) + " and closes at " + format_clock(w.end);
}

std::string price_sentence(const Poi& poi) {
  if (poi.price.amount == 0) return "admission is free";
  return "admission costs " + format_money(poi.price) + " per person";
}

std::vector<GeneratedQa> fact_expansion(const GenerationRequest& req) {
  std::vector<GeneratedQa> out;
  const auto subject = fact_subject(req);
  const std::string answer = req.fact ? req.fact->text : "";
  for (int i = 0; i < req.n; ++i) {
    const auto slot = static_cast<std::size_t>(i + req.attempt) % kFactTemplates.size();
    auto q = fill(kFactTemplates[slot], subject);
    const int round = (i + req.attempt) / static_cast<int>(kFactTemplates.size());
    if (round > 0) q += " (" + std::to_string(round + 1) + ")";
    out.push_back({std::move(q), answer, std::nullopt});
  }
  return out;
}

std::vector<GeneratedQa> image_qa(const GenerationRequest& req) {
  const Poi& poi = *req.poi;
  const std::string kind = req.image ? req.image->kind : "street";
  std::vector<GeneratedQa> out;
  out.push_back({"Which place is shown in this " + kind + " image?",
                 "This " + kind + " image shows " + poi.name + " in " + poi.city + ".",
                 VlType::kIdentification});
  out.push_back({"What can a visitor expect at the place shown in this " + kind + " image?",
                 poi.name + " is a " + lower(poi.category) + " spot in " + poi.city +
                     " where visitors usually spend about " + std::to_string(poi.visit_duration) +
                     " minutes.",
                 VlType::kExperience});
  out.push_back({"When can I visit the place in this " + kind + " image and what does it cost?",
                 hours_sentence(poi) + "; " + price_sentence(poi) + ".", VlType::kPractical});
  return out;
}

std::vector<GeneratedQa> practical_augment(const GenerationRequest& req) {
  const Poi& poi = *req.poi;
  std::string answer;
  if (req.topic == "cost") {
    answer = "At " + poi.name + " " + price_sentence(poi) + ".";
  } else if (req.topic == "accessibility") {
    answer = poi.accessibility.contains("wheelchair")
                 ? poi.name + " offers wheelchair access."
                 : poi.name + " does not list wheelchair access; check ahead.";
  } else if (req.topic == "safety") {
    answer = poi.name + " in " + poi.city +
             " is generally safe; keep valuables secure in crowded areas.";
  } else {
    answer = "Check current " + req.topic + " information for " + poi.name + " before visiting.";
  }
  return {{"What should travelers know about " + req.topic + " at " + poi.name + "?", answer,
           std::nullopt}};
}

}  // namespace

std::vector<GeneratedQa> ReferenceGenerator::generate(const GenerationRequest& request) {
  switch (request.template_id) {
    case PromptTemplate::kFactExpansion:
      return fact_expansion(request);
    case PromptTemplate::kImageQa:
      if (!request.poi) throw GeneratorError("image request without POI");
      return image_qa(request);
    case PromptTemplate::kPracticalAugment:
      if (!request.poi) throw GeneratorError("augment request without POI");
      return practical_augment(request);
  }
  return {};
}

void to_json(Json& j, const Fact& v) {
  j = Json{{"id", v.id}, {"text", v.text}, {"source", v.source}};
  if (v.poi_id) j["poi_id"] = *v.poi_id;
  if (v.category) j["category"] = *v.category;
}

void from_json(const Json& j, Fact& v) {
  v.id = j.at("id").get<std::string>();
  v.text = j.at("text").get<std::string>();
  v.source = j.value("source", "");
  v.poi_id = j.contains("poi_id") ? std::optional(j.at("poi_id").get<std::string>()) : std::nullopt;
  v.category = j.contains("category") ? std::optional(j.at("category").get<std::string>()) : std::nullopt;
}

}  // namespace travelkit::forge
