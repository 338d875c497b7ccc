#include "travelkit/agent/query.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <regex>
#include <vector>

namespace travelkit::agent {
namespace {

constexpr std::array<std::string_view, 12> kNumberWords = {
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven", "twelve"};
constexpr std::array<std::string_view, 7> kWeekdays = {"monday", "tuesday", "wednesday", "thursday",
                                                       "friday", "saturday", "sunday"};

const std::string kCount = "(\\d+|one|two|three|four|five|six|seven|eight|nine|ten|eleven|twelve)";
const std::string kAmount = "(\\d{1,3}(?:,\\d{3})+|\\d+)(?:\\.(\\d{1,2}))?";

int parse_count(const std::string& s) {
  for (std::size_t i = 0; i < kNumberWords.size(); ++i) {
    if (s == kNumberWords[i]) return static_cast<int>(i) + 1;
  }
  return std::stoi(s);
}

std::string currency_of(const std::string& token) {
  if (token == "$" || token == "usd" || token.starts_with("dollar")) return "USD";
  if (token == "\xE2\x82\xAC" || token == "eur" || token.starts_with("euro")) return "EUR";
  if (token == "\xC2\xA3" || token == "gbp" || token.starts_with("pound")) return "GBP";
  if (token == "\xC2\xA5" || token == "jpy" || token == "yen") return "JPY";
  std::string up = token;
  for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return up;
}

Money to_money(std::string whole, const std::string& frac, const std::string& currency) {
  std::erase(whole, ',');
  const int digits = minor_unit_digits(currency);
  std::int64_t amount = std::stoll(whole);
  std::string f = frac.substr(0, static_cast<std::size_t>(digits));
  while (static_cast<int>(f.size()) < digits) f += '0';
  for (int i = 0; i < digits; ++i) amount *= 10;
  if (!f.empty()) amount += std::stoll(f);
  return Money{amount, currency};
}

// Tracks which bytes of the message a rule has already claimed.
class Scanner {
 public:
  explicit Scanner(std::string_view message) : original_(message), lower_(message) {
    for (auto& c : lower_) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    used_.assign(lower_.size(), false);
  }

  // Calls fn for each unclaimed match, in order; fn returns true to claim it.
  template <class Fn>
  void each(const std::string& pattern, Fn fn) {
    const std::regex re(pattern);
    for (auto it = std::sregex_iterator(lower_.begin(), lower_.end(), re); it != std::sregex_iterator();
         ++it) {
      const auto& m = *it;
      const auto begin = static_cast<std::size_t>(m.position(0));
      const auto end = begin + static_cast<std::size_t>(m.length(0));
      if (std::any_of(used_.begin() + begin, used_.begin() + end, [](bool u) { return u; })) continue;
      if (fn(m)) std::fill(used_.begin() + begin, used_.begin() + end, true);
    }
  }

  std::string remainder() const {
    std::string out;
    bool space = false;
    for (std::size_t i = 0; i < original_.size(); ++i) {
      const char c = used_[i] ? ' ' : original_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        space = !out.empty();
        continue;
      }
      if (space) out += ' ';
      space = false;
      out += c;
    }
    return out;
  }

 private:
  std::string original_;
  std::string lower_;
  std::vector<bool> used_;
};

}  // namespace

bool QuerySpec::empty() const {
  return !destination && !days && !budget && !group_size && !weekday && accessibility.empty() &&
         !quality_ranking && !image && !landmark;
}

std::optional<std::string> LookupRecognizer::recognize(std::string_view image) const {
  auto it = table_.find(image);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

QuerySpec analyze_query(std::string_view message, const std::optional<std::string>& visual,
                        std::span<const std::string> cities, const LandmarkRecognizer* recognizer) {
  std::map<std::string, std::string> places;
  for (const auto& c : cities) places.emplace(c, c);
  return analyze_query(message, visual, places, recognizer);
}

QuerySpec analyze_query(std::string_view message, const std::optional<std::string>& visual,
                        const std::map<std::string, std::string>& places,
                        const LandmarkRecognizer* recognizer) {
  QuerySpec spec;
  Scanner sc(message);

  const std::string symbol = "(\\$|\xE2\x82\xAC|\xC2\xA3|\xC2\xA5)";
  const std::string code = "(usd|eur|gbp|jpy|krw|cny|aud|cad|chf|dollars?|euros?|pounds?|yen)";
  auto take_money = [&](const std::string& whole, const std::string& frac, const std::string& cur) {
    if (spec.budget) return false;
    spec.budget = to_money(whole, frac, currency_of(cur));
    return true;
  };
  sc.each(symbol + "\\s*" + kAmount, [&](const std::smatch& m) {
    return take_money(m[2].str(), m[3].str(), m[1].str());
  });
  sc.each("\\b" + kAmount + "\\s*" + code + "\\b", [&](const std::smatch& m) {
    return take_money(m[1].str(), m[2].str(), m[3].str());
  });
  sc.each("\\b" + code + "\\s*" + kAmount + "\\b", [&](const std::smatch& m) {
    return take_money(m[2].str(), m[3].str(), m[1].str());
  });

  sc.each("\\b" + kCount + "[\\s-]*days?\\b", [&](const std::smatch& m) {
    if (spec.days) return false;
    spec.days = parse_count(m[1].str());
    return true;
  });
  sc.each("\\b(?:a|one) weekend\\b|\\bweekend\\b", [&](const std::smatch&) {
    if (spec.days) return false;
    spec.days = 2;
    return true;
  });

  auto take_group = [&](int n) {
    if (spec.group_size) return false;
    spec.group_size = n;
    return true;
  };
  sc.each("\\b(?:for\\s+)?" + kCount + "\\s+(?:people|persons|adults|travell?ers|guests|friends|of us)\\b",
          [&](const std::smatch& m) { return take_group(parse_count(m[1].str())); });
  sc.each("\\b(?:family|group|party) of\\s+" + kCount + "\\b",
          [&](const std::smatch& m) { return take_group(parse_count(m[1].str())); });
  sc.each("\\b(?:solo|alone|by myself)\\b", [&](const std::smatch&) { return take_group(1); });
  sc.each("\\b(?:a couple|couple|my partner and i)\\b", [&](const std::smatch&) { return take_group(2); });

  sc.each("\\b(monday|tuesday|wednesday|thursday|friday|saturday|sunday)s?\\b", [&](const std::smatch& m) {
    if (spec.weekday) return false;
    const auto it = std::find(kWeekdays.begin(), kWeekdays.end(), m[1].str());
    spec.weekday = static_cast<int>(it - kWeekdays.begin());
    return true;
  });

  sc.each("\\b(?:wheelchair(?:[- ]accessible)?|step[- ]free)\\b", [&](const std::smatch&) {
    spec.accessibility.insert("wheelchair");
    return true;
  });
  sc.each("\\b(?:elderly|elder|seniors?|grandparents?)\\b", [&](const std::smatch&) {
    spec.accessibility.insert("elder-friendly");
    return true;
  });
  sc.each("\\b(?:best|top[- ]rated|highly[- ]rated|must[- ]see|reviews?|popular)\\b",
          [&](const std::smatch&) {
            spec.quality_ranking = true;
            return true;
          });

  std::vector<std::string> by_length;
  for (const auto& [name, _] : places) by_length.push_back(name);
  std::stable_sort(by_length.begin(), by_length.end(),
                   [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  for (const auto& name : by_length) {
    std::string pattern;
    for (char c : name) {
      const auto u = static_cast<unsigned char>(c);
      if (std::isalnum(u) || u >= 0x80) {
        pattern += static_cast<char>(std::tolower(u));
      } else if (c == ' ') {
        pattern += "\\s+";
      } else {
        pattern += std::string("\\") + c;
      }
    }
    sc.each("\\b" + pattern + "\\b", [&](const std::smatch&) {
      if (spec.destination) return false;
      spec.destination = places.at(name);
      return true;
    });
  }

  spec.remainder = sc.remainder();
  if (visual && !visual->empty()) {
    spec.image = *visual;
    if (recognizer) spec.landmark = recognizer->recognize(*visual);
  }
  return spec;
}

void to_json(Json& j, const QuerySpec& v) {
  j = Json::object();
  if (v.destination) j["destination"] = *v.destination;
  if (v.days) j["days"] = *v.days;
  if (v.budget) j["budget"] = *v.budget;
  if (v.group_size) j["group_size"] = *v.group_size;
  if (v.weekday) j["weekday"] = *v.weekday;
  j["accessibility"] = v.accessibility;
  j["quality_ranking"] = v.quality_ranking;
  j["remainder"] = v.remainder;
  if (v.image) j["image"] = *v.image;
  if (v.landmark) j["landmark"] = *v.landmark;
}

void from_json(const Json& j, QuerySpec& v) {
  auto opt_str = [&](const char* k) {
    return j.contains(k) ? std::optional(j.at(k).get<std::string>()) : std::nullopt;
  };
  auto opt_int = [&](const char* k) {
    return j.contains(k) ? std::optional(j.at(k).get<int>()) : std::nullopt;
  };
  v.destination = opt_str("destination");
  v.days = opt_int("days");
  v.budget = j.contains("budget") ? std::optional(j.at("budget").get<Money>()) : std::nullopt;
  v.group_size = opt_int("group_size");
  v.weekday = opt_int("weekday");
  v.accessibility = j.value("accessibility", std::set<std::string>{});
  v.quality_ranking = j.value("quality_ranking", false);
  v.remainder = j.value("remainder", "");
  v.image = opt_str("image");
  v.landmark = opt_str("landmark");
}

}  // namespace travelkit::agent
