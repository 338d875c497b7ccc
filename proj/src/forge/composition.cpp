#include "travelkit/forge/composition.hpp"

#include <iomanip>
#include <set>
#include <sstream>

namespace travelkit::forge {
namespace {

std::size_t word_count(const std::string& s) {
  std::istringstream in(s);
  std::size_t n = 0;
  for (std::string w; in >> w;) ++n;
  return n;
}

void add_identity(CompositionStats& s, std::string name, long long expected, long long actual) {
  s.identities.push_back({std::move(name), expected, actual});
}

std::string row(const std::string& label, const SplitCounts& c) {
  std::ostringstream out;
  out << std::left << std::setw(28) << label << std::right << std::setw(9) << c.all << std::setw(9)
      << c.train << std::setw(9) << c.test << "\n";
  return out.str();
}

}  // namespace

void SplitCounts::add(const std::optional<Split>& s) {
  ++all;
  if (s == Split::kTrain) ++train;
  if (s == Split::kTest) ++test;
}

bool CompositionStats::identities_pass() const {
  for (const auto& id : identities) {
    if (!id.pass()) return false;
  }
  return true;
}

CompositionStats composition_report(const PoiStore& store, std::span<const QaPair> qa,
                                    std::span<const CotRecord> cot,
                                    const CompositionConfig& config) {
  CompositionStats s;
  for (auto c : kCategories) s.by_category[std::string(c)] = {};
  for (auto k : kImageKinds) s.by_visual[std::string(k)] = {};

  std::map<std::string, std::string> image_kind;
  for (const auto& p : store.all()) {
    for (const auto& img : p.images) image_kind[img.uri] = img.kind;
  }

  std::set<std::string> facts;
  std::size_t text_words = 0, vl_words = 0;
  bool any_split = false;
  for (const auto& q : qa) {
    any_split |= q.split.has_value();
    const Poi* poi = q.poi_id ? store.find(*q.poi_id) : nullptr;
    std::optional<std::string> category = poi ? std::optional(poi->category) : q.category;
    if (category && s.by_category.contains(*category)) s.by_category[*category].add(q.split);
    s.total.add(q.split);
    if (q.modality == Modality::kText) {
      s.text.add(q.split);
      text_words += word_count(q.answer);
      if (q.source_fact_id) {
        facts.insert(*q.source_fact_id);
        ++s.fact_questions;
      } else {
        ++s.augmented;
      }
    } else {
      s.vision_language.add(q.split);
      vl_words += word_count(q.answer);
      if (q.image_uri) {
        auto it = image_kind.find(*q.image_uri);
        if (it != image_kind.end() && s.by_visual.contains(it->second)) {
          s.by_visual[it->second].add(q.split);
        }
      }
    }
  }
  for (const auto& c : cot) {
    any_split |= c.split.has_value();
    s.cot.add(c.split);
    s.total.add(c.split);
    if (!c.chain.spatial.empty()) s.cot_spatial.add(c.split);
    if (!c.chain.temporal.empty()) s.cot_temporal.add(c.split);
    if (!c.chain.practical.empty()) s.cot_practical.add(c.split);
  }
  s.facts = facts.size();
  for (const auto& p : store.all()) s.images += p.images.size();
  s.image_qa_product = s.images * static_cast<std::size_t>(config.vl_types_per_image.value_or(3));
  if (s.text.all > 0) s.mean_text_answer_words = static_cast<double>(text_words) / s.text.all;
  if (s.vision_language.all > 0) {
    s.mean_vl_answer_words = static_cast<double>(vl_words) / s.vision_language.all;
  }

  auto ll = [](std::size_t v) { return static_cast<long long>(v); };
  add_identity(s, "text = facts * questions_per_fact + augmented",
               ll(s.facts) * config.questions_per_fact + ll(s.augmented), ll(s.text.all));
  if (config.vl_types_per_image) {
    add_identity(s, "vision-language = images * types_per_image", ll(s.image_qa_product),
                 ll(s.vision_language.all));
  }
  add_identity(s, "total = text + vision-language + cot",
               ll(s.text.all + s.vision_language.all + s.cot.all), ll(s.total.all));

  auto category_sum = [&](auto member) {
    std::size_t n = 0;
    for (const auto& [_, c] : s.by_category) n += c.*member;
    return ll(n);
  };
  auto visual_sum = [&](auto member) {
    std::size_t n = 0;
    for (const auto& [_, c] : s.by_visual) n += c.*member;
    return ll(n);
  };
  add_identity(s, "categories (all) = text + vision-language",
               ll(s.text.all + s.vision_language.all), category_sum(&SplitCounts::all));
  add_identity(s, "visual elements (all) = vision-language", ll(s.vision_language.all),
               visual_sum(&SplitCounts::all));
  add_identity(s, "cot spatial = cot", ll(s.cot.all), ll(s.cot_spatial.all));
  add_identity(s, "cot temporal = cot", ll(s.cot.all), ll(s.cot_temporal.all));
  add_identity(s, "cot practical = cot", ll(s.cot.all), ll(s.cot_practical.all));
  if (any_split) {
    add_identity(s, "total = train + test", ll(s.total.all), ll(s.total.train + s.total.test));
    add_identity(s, "categories (train) = text + vision-language (train)",
                 ll(s.text.train + s.vision_language.train), category_sum(&SplitCounts::train));
    add_identity(s, "categories (test) = text + vision-language (test)",
                 ll(s.text.test + s.vision_language.test), category_sum(&SplitCounts::test));
    add_identity(s, "visual elements (train) = vision-language (train)",
                 ll(s.vision_language.train), visual_sum(&SplitCounts::train));
    add_identity(s, "visual elements (test) = vision-language (test)",
                 ll(s.vision_language.test), visual_sum(&SplitCounts::test));
    add_identity(s, "cot is train-only", 0, ll(s.cot.test));
  }
  return s;
}

std::string CompositionStats::to_text() const {
  std::ostringstream out;
  out << std::left << std::setw(28) << "section/subcategory" << std::right << std::setw(9) << "all"
      << std::setw(9) << "train" << std::setw(9) << "test" << "\n";
  out << "[qa format]\n";
  out << row("  text", text) << row("  vision-language", vision_language) << row("  cot", cot)
      << row("  total", total);
  out << "[locations]\n";
  for (auto c : kCategories) out << row("  " + std::string(c), by_category.at(std::string(c)));
  out << "[visual elements]\n";
  for (auto k : kImageKinds) out << row("  " + std::string(k), by_visual.at(std::string(k)));
  out << "[cot annotations]\n";
  out << row("  spatial", cot_spatial) << row("  temporal", cot_temporal)
      << row("  practical", cot_practical);
  out << "[sources]\n";
  out << "  facts " << facts << ", fact questions " << fact_questions << ", augmented "
      << augmented << "\n";
  out << "  images " << images << ", images x types " << image_qa_product << "\n";
  out << std::fixed << std::setprecision(1);
  out << "  mean answer words: text " << mean_text_answer_words << ", vision-language "
      << mean_vl_answer_words << "\n";
  out << "[identities]\n";
  for (const auto& id : identities) {
    out << "  " << (id.pass() ? "PASS " : "FAIL ") << id.name << " (expected " << id.expected
        << ", actual " << id.actual << ")\n";
  }
  out << (identities_pass() ? "all identities hold\n" : "identity check FAILED\n");
  return out.str();
}

}  // namespace travelkit::forge
