#include "travelkit/forge/pipeline.hpp"

#include <algorithm>
#include <set>

#include "travelkit/bench/normalize.hpp"

namespace travelkit::forge {
namespace {

// Calls the generator until it returns `want` outputs with pairwise-distinct
// normalized questions, or attempts run out.
std::vector<GeneratedQa> generate_distinct(QuestionGenerator& gen, GenerationRequest req,
                                           std::size_t want, const std::string& subject,
                                           const RetryPolicy& retry) {
  std::string last_problem = "no attempts made";
  bool last_retriable = true;
  for (int attempt = 0; attempt < std::max(1, retry.max_attempts); ++attempt) {
    req.attempt = attempt;
    std::vector<GeneratedQa> out;
    try {
      out = gen.generate(req);
    } catch (const GeneratorError& e) {
      last_problem = std::string("generator failure: ") + e.what();
      last_retriable = true;
      continue;
    }
    if (out.size() != want) {
      last_problem = "generator returned " + std::to_string(out.size()) + " outputs, expected " +
                     std::to_string(want);
      last_retriable = true;
      continue;
    }
    std::set<std::string> seen;
    bool distinct = true;
    for (const auto& g : out) distinct &= seen.insert(bench::normalize_text(g.question)).second;
    if (distinct) return out;
    last_problem = "duplicate questions after " + std::to_string(attempt + 1) + " attempt(s)";
    last_retriable = false;
  }
  throw ForgeError(subject, last_problem, last_retriable);
}

std::size_t image_index(const Poi& poi, const ImageRef& image) {
  for (std::size_t i = 0; i < poi.images.size(); ++i) {
    if (poi.images[i] == image) return i;
  }
  throw ForgeError(poi.id, "image '" + image.uri + "' does not belong to POI", false);
}

}  // namespace

std::vector<QaPair> expand_fact(const Fact& fact, QuestionGenerator& generator, int k,
                                const Poi* poi, RetryPolicy retry) {
  if (k < 1) throw ForgeError(fact.id, "questions per fact must be >= 1", false);
  GenerationRequest req;
  req.template_id = PromptTemplate::kFactExpansion;
  req.fact = fact;
  if (poi) req.poi = *poi;
  req.n = k;
  auto generated = generate_distinct(generator, req, static_cast<std::size_t>(k), fact.id, retry);
  std::vector<QaPair> out;
  for (int i = 0; i < k; ++i) {
    QaPair qa;
    qa.id = fact.id + "-q" + std::to_string(i + 1);
    qa.poi_id = fact.poi_id;
    qa.modality = Modality::kText;
    qa.question = std::move(generated[static_cast<std::size_t>(i)].question);
    qa.answer = std::move(generated[static_cast<std::size_t>(i)].answer);
    qa.source_fact_id = fact.id;
    qa.category = poi ? std::optional(poi->category) : fact.category;
    out.push_back(std::move(qa));
  }
  return out;
}

std::vector<QaPair> generate_vl_qa(const Poi& poi, const ImageRef& image,
                                   QuestionGenerator& generator, RetryPolicy retry) {
  const auto idx = image_index(poi, image);
  GenerationRequest req;
  req.template_id = PromptTemplate::kImageQa;
  req.poi = poi;
  req.image = image;
  req.n = kVlTypesPerImage;
  auto generated = generate_distinct(generator, req, kVlTypesPerImage, poi.id, retry);

  std::set<VlType> types;
  for (const auto& g : generated) {
    if (g.vl_type) types.insert(*g.vl_type);
  }
  if (types.size() != kVlTypesPerImage) {
    throw ForgeError(poi.id, "image QA must cover identification, experience and practical", true);
  }
  std::vector<QaPair> out;
  for (auto& g : generated) {
    QaPair qa;
    qa.id = poi.id + "-img" + std::to_string(idx + 1) + "-" + std::string(to_string(*g.vl_type));
    qa.poi_id = poi.id;
    qa.modality = Modality::kVisionLanguage;
    qa.vl_type = g.vl_type;
    qa.question = std::move(g.question);
    qa.answer = std::move(g.answer);
    qa.image_uri = image.uri;
    qa.category = poi.category;
    out.push_back(std::move(qa));
  }
  std::sort(out.begin(), out.end(), [](const QaPair& a, const QaPair& b) {
    return *a.vl_type < *b.vl_type;
  });
  return out;
}

std::vector<QaPair> generate_vl_qa(const Poi& poi, QuestionGenerator& generator,
                                   RetryPolicy retry) {
  std::vector<QaPair> out;
  for (const auto& image : poi.images) {
    auto qas = generate_vl_qa(poi, image, generator, retry);
    out.insert(out.end(), std::make_move_iterator(qas.begin()), std::make_move_iterator(qas.end()));
  }
  return out;
}

std::vector<QaPair> augment_practical(const Poi& poi, std::span<const std::string> topics,
                                      QuestionGenerator& generator, RetryPolicy retry) {
  std::vector<QaPair> out;
  for (const auto& topic : topics) {
    GenerationRequest req;
    req.template_id = PromptTemplate::kPracticalAugment;
    req.poi = poi;
    req.topic = topic;
    req.n = 1;
    auto generated = generate_distinct(generator, req, 1, poi.id, retry);
    QaPair qa;
    qa.id = poi.id + "-aug-" + topic;
    qa.poi_id = poi.id;
    qa.modality = Modality::kText;
    qa.question = std::move(generated[0].question);
    qa.answer = std::move(generated[0].answer);
    qa.topic = topic;
    qa.category = poi.category;
    out.push_back(std::move(qa));
  }
  return out;
}

DatasetBuild build_dataset(const PoiStore& store, std::span<const Fact> facts,
                           QuestionGenerator& generator, const BuildConfig& config) {
  std::vector<QaPair> generated;
  for (const auto& fact : facts) {
    const Poi* poi = fact.poi_id ? store.find(*fact.poi_id) : nullptr;
    if (fact.poi_id && !poi) throw ForgeError(fact.id, "unknown POI '" + *fact.poi_id + "'", false);
    auto qas = expand_fact(fact, generator, config.questions_per_fact, poi, config.retry);
    generated.insert(generated.end(), qas.begin(), qas.end());
  }
  for (const auto& poi : store.all()) {
    auto aug = augment_practical(poi, config.augment_topics, generator, config.retry);
    generated.insert(generated.end(), aug.begin(), aug.end());
    if (config.vision_language) {
      auto vl = generate_vl_qa(poi, generator, config.retry);
      generated.insert(generated.end(), vl.begin(), vl.end());
    }
  }

  DatasetBuild build;
  std::set<std::string> ids;
  KeyedFieldChecker checker;
  for (auto& qa : generated) {
    if (!ids.insert(qa.id).second) throw ForgeError(qa.id, "duplicate QA id", false);
    auto verdict = verify_qa(qa, store, config.verify, &checker);
    if (!verdict.accepted()) {
      build.rejected.push_back({std::move(qa), std::move(verdict)});
      continue;
    }
    if (verdict.manual_queue) build.manual_queue.push_back(qa);
    build.qa.push_back(std::move(qa));
  }
  auto by_id = [](const QaPair& a, const QaPair& b) { return a.id < b.id; };
  std::sort(build.qa.begin(), build.qa.end(), by_id);
  std::sort(build.manual_queue.begin(), build.manual_queue.end(), by_id);
  return build;
}

}  // namespace travelkit::forge
