#pragma once

#include <optional>
#include <string>
#include <vector>

#include "travelkit/core/error.hpp"
#include "travelkit/core/records.hpp"
#include "travelkit/core/types.hpp"

namespace travelkit::forge {

// A single factual statement extracted from a travel source.
struct Fact {
  std::string id;
  std::optional<std::string> poi_id;
  std::string text;
  std::string source;
  std::optional<std::string> category;
  bool operator==(const Fact&) const = default;
};

enum class PromptTemplate { kFactExpansion, kImageQa, kPracticalAugment };

// Everything a question generator sees. attempt is 0 on the first call and
// increments on each retry of the same request.
struct GenerationRequest {
  PromptTemplate template_id = PromptTemplate::kFactExpansion;
  std::optional<Fact> fact;
  std::optional<Poi> poi;
  std::optional<ImageRef> image;
  std::string topic;
  int n = 1;
  int attempt = 0;
};

struct GeneratedQa {
  std::string question;
  std::string answer;
  std::optional<VlType> vl_type;
};

// Thrown by generators for transient failures; callers may retry.
class GeneratorError : public Error {
 public:
  using Error::Error;
};

// Boundary to whatever produces question/answer text (a hosted LLM in
// production, templates in tests).
class QuestionGenerator {
 public:
  virtual ~QuestionGenerator() = default;
  virtual std::vector<GeneratedQa> generate(const GenerationRequest& request) = 0;
};

// Deterministic template generator. Output is a pure function of the request.
class ReferenceGenerator : public QuestionGenerator {
 public:
  std::vector<GeneratedQa> generate(const GenerationRequest& request) override;
};

void to_json(Json& j, const Fact& v);
void from_json(const Json& j, Fact& v);

}  // namespace travelkit::forge
