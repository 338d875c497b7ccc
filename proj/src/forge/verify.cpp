#include "travelkit/forge/verify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>
#include <set>

#include "travelkit/bench/normalize.hpp"
#include "travelkit/core/hash.hpp"

namespace travelkit::forge {
namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// "9", "30", "pm" -> minutes since midnight; nullopt unless minutes or a
// meridiem are present (a bare number is not a clock time).
std::optional<int> clock_minutes(const std::ssub_match& hh, const std::ssub_match& mm,
                                 const std::ssub_match& meridiem) {
  if (!mm.matched && !meridiem.matched) return std::nullopt;
  int h = std::stoi(hh.str());
  const int m = mm.matched ? std::stoi(mm.str()) : 0;
  if (meridiem.matched) {
    if (h < 1 || h > 12) return std::nullopt;
    if (meridiem.str() == "am") h = h == 12 ? 0 : h;
    else h = h == 12 ? 12 : h + 12;
  }
  if (h > 24 || m > 59) return std::nullopt;
  return h * 60 + m;
}

struct PriceClaim {
  std::int64_t minor = 0;
  std::optional<std::string> currency;
};

std::optional<std::string> currency_for_symbol(const std::string& sym) {
  if (sym == "$") return "USD";
  if (sym == "\xE2\x82\xAC") return "EUR";
  if (sym == "\xC2\xA3") return "GBP";
  if (sym == "\xC2\xA5") return "JPY";
  return std::nullopt;
}

std::int64_t to_minor(const std::string& number, std::string_view currency) {
  std::string digits;
  for (char c : number) {
    if (c != ',') digits += c;
  }
  const double value = std::stod(digits);
  const int places = minor_unit_digits(currency);
  return std::llround(value * std::pow(10.0, places));
}

std::vector<PriceClaim> price_claims(const std::string& text, const std::string& default_ccy) {
  static const std::regex symbol_re(R"((\$|\xE2\x82\xAC|\xC2\xA3|\xC2\xA5)\s?(\d+(?:,\d{3})*(?:\.\d{1,2})?))");
  static const std::regex code_re(
      R"((\d+(?:,\d{3})*(?:\.\d{1,2})?)\s?(usd|eur|gbp|jpy|cny|hkd|sgd|thb|krw|aud|cad|chf)\b)");
  static const std::regex keyword_re(
      R"(\b(?:costs?|price(?:\s+of)?|priced\s+at|admission(?:\s+is)?|fee(?:\s+of)?|tickets?\s+(?:are|cost))\s+(\d+(?:,\d{3})*(?:\.\d{1,2})?)\b)");
  static const std::regex free_re(
      R"(\b(?:admission|entry|entrance)\s+(?:is\s+)?free\b|\bfree\s+(?:admission|entry)\b)");

  std::vector<PriceClaim> out;
  std::set<std::ptrdiff_t> seen;  // offsets of numbers already claimed
  for (auto it = std::sregex_iterator(text.begin(), text.end(), symbol_re); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    auto ccy = currency_for_symbol(m[1].str());
    seen.insert(m.position(2));
    out.push_back({to_minor(m[2].str(), ccy.value_or(default_ccy)), ccy});
  }
  for (auto it = std::sregex_iterator(text.begin(), text.end(), code_re); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    if (!seen.insert(m.position(1)).second) continue;
    std::string ccy = m[2].str();
    for (auto& c : ccy) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    out.push_back({to_minor(m[1].str(), ccy), ccy});
  }
  for (auto it = std::sregex_iterator(text.begin(), text.end(), keyword_re); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    if (!seen.insert(m.position(1)).second) continue;
    out.push_back({to_minor(m[1].str(), default_ccy), std::nullopt});
  }
  if (std::regex_search(text, free_re)) out.push_back({0, std::nullopt});
  return out;
}

bool whole_word_at(const std::string& text, std::size_t pos, std::size_t len) {
  auto is_word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; };
  if (pos > 0 && is_word(text[pos - 1])) return false;
  if (pos + len < text.size() && is_word(text[pos + len])) return false;
  return true;
}

}  // namespace

std::vector<std::string> KeyedFieldChecker::check(const QaPair& qa, const Poi& poi,
                                                  const PoiStore& context) const {
  std::vector<std::string> problems;
  const std::string text = lower(qa.answer);

  static const std::regex open_re(
      R"(\b(?:opens?|opening(?:\s+time)?\s+is|from)\s+(?:at\s+)?(\d{1,2})(?::(\d{2}))?\s*(am|pm)?)");
  static const std::regex close_re(
      R"(\b(?:closes?|closing(?:\s+time)?\s+is|until|till|to)\s+(?:at\s+)?(\d{1,2})(?::(\d{2}))?\s*(am|pm)?)");

  std::set<int> starts, ends;
  for (const auto& h : poi.hours) {
    starts.insert(h.window.start);
    ends.insert(h.window.end);
  }
  for (auto it = std::sregex_iterator(text.begin(), text.end(), open_re); it != std::sregex_iterator(); ++it) {
    auto t = clock_minutes((*it)[1], (*it)[2], (*it)[3]);
    if (t && !starts.contains(*t)) {
      problems.push_back("opening time " + format_clock(*t) + " not in POI hours");
    }
  }
  for (auto it = std::sregex_iterator(text.begin(), text.end(), close_re); it != std::sregex_iterator(); ++it) {
    auto t = clock_minutes((*it)[1], (*it)[2], (*it)[3]);
    if (t && !ends.contains(*t)) {
      problems.push_back("closing time " + format_clock(*t) + " not in POI hours");
    }
  }

  for (const auto& claim : price_claims(text, poi.price.currency)) {
    if (claim.currency && *claim.currency != poi.price.currency) {
      problems.push_back("price currency " + *claim.currency + " differs from " + poi.price.currency);
    } else if (claim.minor != poi.price.amount) {
      problems.push_back("price mismatch: stated " +
                         format_money(Money{claim.minor, poi.price.currency}) + ", record " +
                         format_money(poi.price));
    }
  }

  // Longest city names first so "New York" shadows "York".
  auto cities = context.cities();
  std::sort(cities.begin(), cities.end(),
            [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  std::vector<std::pair<std::size_t, std::size_t>> taken;
  for (const auto& city : cities) {
    const auto needle = lower(city);
    if (needle.empty()) continue;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
      if (!whole_word_at(text, pos, needle.size())) continue;
      const bool overlaps = std::any_of(taken.begin(), taken.end(), [&](const auto& span) {
        return pos < span.second && span.first < pos + needle.size();
      });
      if (overlaps) continue;
      taken.emplace_back(pos, pos + needle.size());
      if (city != poi.city) problems.push_back("city mismatch: answer names " + city);
    }
  }
  return problems;
}

VerificationVerdict verify_qa(const QaPair& qa, const PoiStore& context, const VerifyConfig& config,
                              const ConsistencyChecker* checker) {
  VerificationVerdict v;
  // Layer 1: structure.
  std::vector<std::string> rule;
  if (qa.id.empty()) rule.push_back("id empty");
  if (qa.question.empty()) rule.push_back("question empty");
  if (qa.answer.empty()) rule.push_back("answer empty");
  if (!qa.question.empty() && qa.question.size() < config.min_question_chars) {
    rule.push_back("question too short");
  }
  if (qa.question.size() > config.max_question_chars) rule.push_back("question too long");
  if (qa.answer.size() > config.max_answer_chars) rule.push_back("answer too long");
  if (!qa.answer.empty() && bench::normalize_text(qa.answer) == bench::normalize_text(qa.question)) {
    rule.push_back("answer repeats question");
  }
  if ((qa.modality == Modality::kVisionLanguage) != qa.vl_type.has_value()) {
    rule.push_back("vl_type must be present iff modality is vision-language");
  }
  if (qa.modality == Modality::kVisionLanguage && !qa.image_uri) {
    rule.push_back("vision-language QA without image");
  }
  v.rule_pass = rule.empty();
  v.reasons = std::move(rule);
  if (!v.rule_pass) return v;

  // Layer 2: consistency with the referenced POI.
  if (qa.poi_id) {
    const Poi* poi = context.find(*qa.poi_id);
    if (!poi) {
      v.reasons.push_back("unknown POI");
      return v;
    }
    KeyedFieldChecker fallback;
    const ConsistencyChecker& c = checker ? *checker : fallback;
    auto problems = c.check(qa, *poi, context);
    if (!problems.empty()) {
      v.reasons.insert(v.reasons.end(), problems.begin(), problems.end());
      return v;
    }
  }
  v.semantic_pass = true;

  // Layer 3: deterministic sample into the manual review queue.
  const double u = static_cast<double>(stable_hash(qa.id, config.seed) >> 11) * 0x1.0p-53;
  v.manual_queue = u < config.manual_rate;
  return v;
}

}  // namespace travelkit::forge
