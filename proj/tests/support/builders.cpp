#include "builders.hpp"

#include <algorithm>
#include <array>

namespace travelkit::testing {
namespace {

int grid(int minutes) { return minutes / kTimeGrid * kTimeGrid; }

std::string words(std::size_t n, const std::string& lead) {
  std::string s = lead;
  static const std::array<const char*, 8> pool = {"open", "daily", "near", "the", "river",
                                                  "with", "views", "tickets"};
  std::size_t have = 0;
  for (char c : lead) have += c == ' ';
  have += lead.empty() ? 0 : 1;
  for (std::size_t i = have; i < n; ++i) {
    if (!s.empty()) s += ' ';
    s += pool[i % pool.size()];
  }
  return s;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

}  // namespace

std::filesystem::path fixture_dir(const std::string& name) {
  return std::filesystem::path(TRAVELKIT_FIXTURE_DIR) / name;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("travelkit-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

Poi make_poi(const std::string& id, const std::string& category, const std::string& city, double lat,
             double lon, int open, int close, std::int64_t price, int duration, double utility) {
  Poi p;
  p.id = id;
  p.name = id;
  p.category = category;
  p.city = city;
  p.location = GeoPoint::from_degrees(lat, lon);
  for (int d = 0; d < 7; ++d) p.hours.push_back({d, {open, close}});
  p.price = Money{price, "USD"};
  p.visit_duration = duration;
  p.utility = utility;
  return p;
}

std::vector<Poi> random_pois(SplitMixRng& rng, std::size_t n, const std::string& city,
                             const std::string& prefix) {
  static const std::array<int, 5> durations = {30, 45, 60, 90, 120};
  std::vector<Poi> out;
  for (std::size_t i = 0; i < n; ++i) {
    Poi p;
    p.id = prefix + std::to_string(i);
    p.name = "Place " + std::to_string(i);
    p.category = std::string(kCategories[rng.below(kCategories.size())]);
    p.city = city;
    p.location = GeoPoint::from_micro(40'680'000 + static_cast<std::int64_t>(rng.below(40'000)),
                                      -74'010'000 + static_cast<std::int64_t>(rng.below(40'000)));
    for (int d = 0; d < 7; ++d) {
      if (rng.below(10) < 2) continue;  // closed
      const int start = grid(420 + static_cast<int>(rng.below(300)));
      const int len = grid(90 + static_cast<int>(rng.below(600)));
      const int end = std::min(start + len, kMinutesPerDay);
      if (rng.below(5) == 0 && end - start >= 240) {
        const int gap_at = grid(start + (end - start) / 2);
        p.hours.push_back({d, {start, gap_at - 30}});
        p.hours.push_back({d, {gap_at + 30, end}});
      } else {
        p.hours.push_back({d, {start, end}});
      }
    }
    p.price = Money{static_cast<std::int64_t>(rng.below(7)) * 500, "USD"};
    p.visit_duration = durations[rng.below(durations.size())];
    p.utility = static_cast<double>(1 + rng.below(100)) / 10.0;
    if (rng.below(2) == 0) p.accessibility.insert("wheelchair");
    if (rng.below(3) == 0) p.accessibility.insert("elder-friendly");
    out.push_back(std::move(p));
  }
  return out;
}

plan::PlanInstance random_instance(SplitMixRng& rng, std::size_t n) {
  plan::PlanInstance inst;
  inst.candidates = random_pois(rng, n, "Testville");
  inst.weekday = static_cast<int>(rng.below(7));
  inst.day_window = {grid(480 + static_cast<int>(rng.below(120))), grid(1080 + static_cast<int>(rng.below(240)))};
  inst.group_size = 1 + static_cast<int>(rng.below(3));
  inst.budget = Money{static_cast<std::int64_t>(1000 + rng.below(12) * 500), "USD"};
  if (rng.below(4) == 0) inst.accessibility.insert("wheelchair");
  if (n > 0 && rng.below(4) == 0) inst.locked.insert(inst.candidates[rng.below(n)].id);
  for (std::size_t k = 0; k < n; ++k) {
    if (n < 2 || rng.below(2) == 0) continue;
    const auto a = rng.below(n), b = rng.below(n);
    if (a == b) continue;
    inst.travel_edges[{inst.candidates[a].id, inst.candidates[b].id}] =
        5 * static_cast<int>(1 + rng.below(12));
  }
  return inst;
}

cot::QueryContext random_context(SplitMixRng& rng, std::size_t n) {
  cot::QueryContext ctx;
  ctx.query = "plan a day";
  ctx.candidates = random_pois(rng, n, "Testville");
  ctx.constraints.weekday = static_cast<int>(rng.below(7));
  ctx.constraints.day_window = {grid(480 + static_cast<int>(rng.below(120))),
                                grid(1080 + static_cast<int>(rng.below(240)))};
  ctx.constraints.group_size = 1 + static_cast<int>(rng.below(4));
  if (rng.below(3) != 0) {
    ctx.constraints.budget = Money{static_cast<std::int64_t>(rng.below(20)) * 500, "USD"};
  }
  if (rng.below(4) == 0) ctx.constraints.accessibility.insert("wheelchair");
  if (n > 1 && rng.below(5) == 0) ctx.candidates[1].price.currency = "EUR";
  return ctx;
}

std::string random_unicode_string(SplitMixRng& rng, std::size_t max_codepoints) {
  static const std::vector<char32_t> pool = {
      U'a', U'Z', U'q', U'7', U'0', U' ', U' ', U'\t', U'\n', U'.', U',', U'!', U'?', U'-', U'\'',
      U'"', U'(', U'$', U'%', U'&', U'/', U'_',
      0x00E9,   // é
      0x00DF,   // ß
      0x00C5,   // Å
      0x0130,   // İ
      0x03A3,   // Σ
      0x03C2,   // ς
      0xFB01,   // ﬁ
      0xFF21,   // full-width A
      0xFF11,   // full-width 1
      0x0301,   // combining acute
      0x0308,   // combining diaeresis
      0x00A0,   // no-break space
      0x200B,   // zero-width space
      0x200D,   // zero-width joiner
      0x2019,   // right single quote
      0x2014,   // em dash
      0x00BD,   // ½
      0x2460,   // circled 1
      0x0416,   // Ж
      0x05D0,   // א
      0x4E2D,   // 中
      0x3042,   // あ
      0xAC00,   // 가
      0x1F600,  // emoji
      0x2126,   // ohm sign
      0x212B,   // angstrom sign
      0x1E9E,   // capital sharp s
  };
  std::string out;
  const std::size_t n = rng.below(max_codepoints + 1);
  for (std::size_t i = 0; i < n; ++i) append_utf8(out, pool[rng.below(pool.size())]);
  return out;
}

Dataset table1_mirror() {
  struct Cell {
    const char* category;
    int train;
    int test;
  };
  static const std::array<Cell, 6> cells = {{{"Attractions", 56, 14},
                                             {"Dining", 42, 10},
                                             {"Living", 31, 8},
                                             {"Transportation", 21, 5},
                                             {"Cultural", 31, 8},
                                             {"Practical", 27, 7}}};
  struct Plan {
    Split split;
    int vl_map;
    int vl_street;
    int fact_questions;
    int augmented;
  };
  const std::array<Plan, 2> plans = {{{Split::kTrain, 32, 48, 110, 18}, {Split::kTest, 8, 12, 20, 12}}};
  static const std::array<VlType, 3> types = {VlType::kIdentification, VlType::kExperience,
                                              VlType::kPractical};
  static const std::array<const char*, 3> topics = {"safety", "cost", "accessibility"};

  std::vector<Poi> pois;
  std::vector<QaPair> qa;
  int fact = 0, aug = 0, text_index = 0;
  for (const auto& plan : plans) {
    const bool train = plan.split == Split::kTrain;
    // One POI per category and split; slots walk the categories in order.
    std::vector<std::size_t> slot_poi;
    for (const auto& cell : cells) {
      Poi p = make_poi(std::string("mirror-") + (train ? "train-" : "test-") + cell.category,
                       cell.category, "Mirror City");
      pois.push_back(p);
      for (int k = 0; k < (train ? cell.train : cell.test); ++k) slot_poi.push_back(pois.size() - 1);
    }
    std::size_t slot = 0;
    const int vl_total = plan.vl_map + plan.vl_street;
    std::string current_image;
    int on_image = 0;
    for (int k = 0; k < vl_total; ++k, ++slot) {
      Poi& p = pois[slot_poi[slot]];
      const std::string kind = k < plan.vl_map ? "map" : "street";
      const bool fresh = current_image.empty() || on_image == 3 ||
                         p.images.empty() || p.images.back().uri != current_image ||
                         p.images.back().kind != kind;
      if (fresh) {
        current_image = p.id + "-img" + std::to_string(p.images.size()) + "." + (kind == "map" ? "png" : "jpg");
        p.images.push_back({current_image, kind});
        on_image = 0;
      }
      QaPair q;
      q.id = p.id + "-vl" + std::to_string(k);
      q.poi_id = p.id;
      q.modality = Modality::kVisionLanguage;
      q.vl_type = types[static_cast<std::size_t>(on_image)];
      q.question = "What does this image show?";
      q.answer = words(26, "This image shows");
      q.image_uri = current_image;
      q.split = plan.split;
      qa.push_back(q);
      ++on_image;
    }
    for (int k = 0; k < plan.fact_questions + plan.augmented; ++k, ++slot) {
      const Poi& p = pois[slot_poi[slot]];
      QaPair q;
      q.poi_id = p.id;
      q.modality = Modality::kText;
      q.split = plan.split;
      if (k < plan.fact_questions) {
        q.source_fact_id = "fact-" + std::to_string(fact / 5);
        q.id = *q.source_fact_id + "-q" + std::to_string(fact % 5);
        q.question = "Question " + std::to_string(fact % 5) + " about fact " + std::to_string(fact / 5) + "?";
        ++fact;
      } else {
        q.topic = topics[static_cast<std::size_t>(aug % 3)];
        q.id = p.id + "-aug-" + *q.topic + "-" + std::to_string(aug);
        q.question = "What should a visitor know about " + *q.topic + " here?";
        ++aug;
      }
      // 96 answers of 46 words and 64 of 45: mean 45.6.
      q.answer = words(text_index < 96 ? 46 : 45, "The answer is");
      ++text_index;
      qa.push_back(q);
    }
  }

  std::vector<CotRecord> cot;
  for (int k = 0; k < 5; ++k) {
    const Poi& p = pois[static_cast<std::size_t>(k)];
    CotRecord r;
    r.id = "cot-" + std::to_string(k);
    r.query = "Plan a visit to " + p.name;
    r.chain.spatial.push_back({"Start at " + p.name + ".", {p.id}, DistanceClaim{0.0}});
    r.chain.temporal.push_back({p.name + " is available 09:00-21:00.", {p.id}, WindowClaim{TimeWindow{540, 1260}}});
    r.chain.practical.push_back({"Add " + p.name + ".", {p.id}, SumClaim{{1000}, 1000, "USD"}});
    r.answer = "Visit " + p.name + ".";
    r.split = Split::kTrain;
    cot.push_back(r);
  }
  return Dataset{forge::PoiStore(std::move(pois)), std::move(qa), std::move(cot)};
}

Dataset random_dataset(std::uint64_t seed) {
  SplitMixRng rng(seed);
  const std::size_t n = 5 + rng.below(40);
  auto pois = random_pois(rng, n, "Randville", "r" + std::to_string(seed) + "-");
  for (auto& p : pois) {
    const auto images = rng.below(3);
    for (std::size_t i = 0; i < images; ++i) {
      p.images.push_back({p.id + "-img" + std::to_string(i), rng.below(2) ? "map" : "street"});
    }
  }
  std::vector<QaPair> qa;
  const std::size_t facts = 3 + rng.below(20);
  for (std::size_t f = 0; f < facts; ++f) {
    const bool orphan = rng.below(5) == 0;
    const std::string poi = pois[rng.below(n)].id;
    for (int k = 0; k < 5; ++k) {
      QaPair q;
      q.id = "fact" + std::to_string(f) + "-q" + std::to_string(k);
      if (!orphan) q.poi_id = poi;
      if (orphan) q.category = std::string(kCategories[f % kCategories.size()]);
      q.source_fact_id = "fact" + std::to_string(f);
      q.question = "Question " + std::to_string(k) + "?";
      q.answer = "Answer.";
      qa.push_back(q);
    }
  }
  for (const auto& p : pois) {
    if (rng.below(3) == 0) {
      QaPair q;
      q.id = p.id + "-aug-safety";
      q.poi_id = p.id;
      q.topic = "safety";
      q.question = "Is it safe?";
      q.answer = "Yes.";
      qa.push_back(q);
    }
    for (const auto& img : p.images) {
      QaPair q;
      q.id = img.uri + "-identification";
      q.poi_id = p.id;
      q.modality = Modality::kVisionLanguage;
      q.vl_type = VlType::kIdentification;
      q.image_uri = img.uri;
      q.question = "What is shown?";
      q.answer = p.name;
      qa.push_back(q);
    }
  }
  std::vector<CotRecord> cot;
  const std::size_t chains = rng.below(10);
  for (std::size_t c = 0; c < chains; ++c) {
    CotRecord r;
    r.id = "cot" + std::to_string(c);
    r.query = "q";
    const auto refs = 1 + rng.below(3);
    for (std::size_t k = 0; k < refs; ++k) {
      const std::string id = pois[rng.below(n)].id;
      r.chain.spatial.push_back({"go", {id}, DistanceClaim{0.0}});
      r.chain.temporal.push_back({"open", {id}, WindowClaim{TimeWindow{540, 600}}});
      r.chain.practical.push_back({"pay", {id}, {}});
    }
    r.answer = "a";
    cot.push_back(r);
  }
  return Dataset{forge::PoiStore(std::move(pois)), std::move(qa), std::move(cot)};
}

}  // namespace travelkit::testing
