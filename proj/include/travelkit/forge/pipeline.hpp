#pragma once

#include <span>
#include <string>
#include <vector>

#include "travelkit/core/error.hpp"
#include "travelkit/forge/generator.hpp"
#include "travelkit/forge/poi_store.hpp"
#include "travelkit/forge/verify.hpp"

namespace travelkit::forge {

inline constexpr int kDefaultQuestionsPerFact = 5;
inline constexpr int kVlTypesPerImage = 3;

// Generation failed for a subject (fact id or POI id).
class ForgeError : public Error {
 public:
  ForgeError(std::string subject_id, const std::string& what, bool retriable)
      : Error(subject_id + ": " + what), subject_id_(std::move(subject_id)), retriable_(retriable) {}
  const std::string& subject_id() const { return subject_id_; }
  bool retriable() const { return retriable_; }

 private:
  std::string subject_id_;
  bool retriable_;
};

struct RetryPolicy {
  int max_attempts = 3;
};

// Expands one fact into k question/answer pairs with distinct questions.
// poi, when given, is the fact's POI and is passed through to the generator.
std::vector<QaPair> expand_fact(const Fact& fact, QuestionGenerator& generator, int k = 5,
                                const Poi* poi = nullptr, RetryPolicy retry = {});

// Three pairs for one image of a POI: identification, experience, practical.
std::vector<QaPair> generate_vl_qa(const Poi& poi, const ImageRef& image,
                                   QuestionGenerator& generator, RetryPolicy retry = {});
// All images of a POI.
std::vector<QaPair> generate_vl_qa(const Poi& poi, QuestionGenerator& generator,
                                   RetryPolicy retry = {});

// One practical-constraint pair per topic.
std::vector<QaPair> augment_practical(const Poi& poi, std::span<const std::string> topics,
                                      QuestionGenerator& generator, RetryPolicy retry = {});

inline const std::vector<std::string>& default_augment_topics() {
  static const std::vector<std::string> topics = {"safety", "cost", "accessibility"};
  return topics;
}

struct BuildConfig {
  int questions_per_fact = kDefaultQuestionsPerFact;
  std::vector<std::string> augment_topics = default_augment_topics();
  bool vision_language = true;
  VerifyConfig verify;
  RetryPolicy retry;
};

struct RejectedQa {
  QaPair qa;
  VerificationVerdict verdict;
};

struct DatasetBuild {
  std::vector<QaPair> qa;              // accepted, sorted by id
  std::vector<QaPair> manual_queue;    // accepted and sampled for review
  std::vector<RejectedQa> rejected;
};

// Generation plus three-layer verification over every fact and POI.
DatasetBuild build_dataset(const PoiStore& store, std::span<const Fact> facts,
                           QuestionGenerator& generator, const BuildConfig& config);

}  // namespace travelkit::forge
