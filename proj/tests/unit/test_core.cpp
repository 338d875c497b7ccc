#include <cmath>
#include <filesystem>
#include <fstream>

#include "builders.hpp"
#include "doctest.h"
#include "travelkit/core/error.hpp"
#include "travelkit/core/geo.hpp"
#include "travelkit/core/hash.hpp"
#include "travelkit/core/jsonl.hpp"
#include "travelkit/core/records.hpp"
#include "travelkit/core/validate.hpp"

using namespace travelkit;
namespace tt = travelkit::testing;

TEST_CASE("hash primitives match published reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  SplitMixRng rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(stable_hash("k", 1) != stable_hash("k", 2));
}

TEST_CASE("rng below stays in range and covers it") {
  SplitMixRng rng(9);
  std::array<int, 6> seen{};
  for (int i = 0; i < 6000; ++i) {
    const auto v = rng.below(6);
    REQUIRE(v < 6);
    ++seen[v];
  }
  for (int c : seen) CHECK(c > 850);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("great circle distance") {
  // One degree of latitude on a 6371 km sphere: pi/180 * 6371000.
  const auto a = GeoPoint::from_degrees(0.0, 0.0);
  const auto b = GeoPoint::from_degrees(1.0, 0.0);
  CHECK(great_circle_meters(a, b) == doctest::Approx(111194.93).epsilon(1e-7));
  CHECK(great_circle_meters(a, a) == 0.0);
  const auto c = GeoPoint::from_degrees(40.7061, -73.9969);
  const auto d = GeoPoint::from_degrees(40.6925, -73.9903);
  CHECK(great_circle_meters(c, d) == doctest::Approx(great_circle_meters(d, c)));
  // Antipodes: half the circumference.
  CHECK(great_circle_meters(GeoPoint::from_degrees(0, 0), GeoPoint::from_degrees(0, 180)) ==
        doctest::Approx(M_PI * kEarthRadiusMeters));
}

TEST_CASE("geo points keep six decimals exactly") {
  const auto p = GeoPoint::from_degrees(40.706086, -73.996864);
  CHECK(p.lat_e6() == 40706086);
  CHECK(p.lon_e6() == -73996864);
  CHECK(p.in_bounds());
  CHECK_FALSE(GeoPoint::from_degrees(91.0, 0.0).in_bounds());
  CHECK_FALSE(GeoPoint::from_degrees(0.0, -180.5).in_bounds());
}

TEST_CASE("time windows") {
  CHECK(on_grid(0));
  CHECK(on_grid(545));
  CHECK_FALSE(on_grid(543));
  CHECK(window_overlap({540, 720}, {600, 900}) == TimeWindow{600, 720});
  CHECK(window_overlap({540, 600}, {600, 700}) == TimeWindow{600, 600});
  CHECK_FALSE(window_overlap({540, 600}, {605, 700}).has_value());
  CHECK(format_clock(0) == "00:00");
  CHECK(format_clock(545) == "09:05");
  CHECK(format_clock(1440) == "24:00");
  CHECK(TimeWindow{540, 600}.contains({540, 600}));
  CHECK_FALSE(TimeWindow{540, 600}.contains({535, 600}));
}

TEST_CASE("money") {
  CHECK(Money{1500, "USD"}.plus({250, "USD"}) == Money{1750, "USD"});
  const Money usd{1, "USD"}, eur{1, "EUR"};
  CHECK_THROWS_AS(usd.plus(eur), Error);
  CHECK(Money{1250, "EUR"}.times(3) == Money{3750, "EUR"});
  CHECK(format_money({4500, "USD"}) == "45.00 USD");
  CHECK(format_money({5, "USD"}) == "0.05 USD");
  CHECK(format_money({1200, "JPY"}) == "1200 JPY");
  CHECK(minor_unit_digits("JPY") == 0);
  CHECK(minor_unit_digits("EUR") == 2);
}

TEST_CASE("poi validation reports every problem") {
  Poi p = tt::make_poi("x");
  CHECK(validate_poi(p).ok());
  p.name.clear();
  p.category = "Nightlife";
  p.hours.push_back({8, {600, 543}});
  p.visit_duration = 0;
  p.images.push_back({"a.jpg", "aerial"});
  const auto v = validate_poi(p);
  CHECK(v.mentions("name empty"));
  CHECK(v.mentions("closed category set"));
  CHECK(v.mentions("weekday out of range"));
  CHECK(v.mentions("window inverted"));
  CHECK(v.mentions("off 5-minute grid"));
  CHECK(v.mentions("visit duration not positive"));
  CHECK(v.mentions("map/street"));
  CHECK(v.violations.size() >= 7);
}

TEST_CASE("qa validation ties vl_type to modality") {
  QaPair q;
  q.id = "q1";
  q.question = "Where is it?";
  q.answer = "Here.";
  CHECK(validate_qa(q).ok());
  q.vl_type = VlType::kExperience;
  CHECK(validate_qa(q).mentions("vl_type"));
  q.modality = Modality::kVisionLanguage;
  CHECK(validate_qa(q).ok());
}

TEST_CASE("records round trip and encode canonically") {
  Poi p = tt::make_poi("brooklyn-bridge", "Attractions", "New York", 40.706086, -73.996864);
  p.accessibility = {"wheelchair"};
  p.images = {{"b.jpg", "street"}};
  const auto line = encode_record(p);
  CHECK(decode_record<Poi>(line) == p);
  CHECK(encode_record(decode_record<Poi>(line)) == line);
  CHECK(line.find('\n') == std::string::npos);
  // Sorted keys.
  CHECK(line.find("\"accessibility\"") < line.find("\"category\""));

  QaPair q;
  q.id = "q";
  q.question = "What?";
  q.answer = "That.";
  q.split = Split::kTest;
  q.topic = "safety";
  const auto qline = encode_record(q);
  CHECK(decode_record<QaPair>(qline) == q);
  CHECK(qline.find("image_uri") == std::string::npos);

  CotRecord c;
  c.id = "c";
  c.query = "plan";
  c.chain.spatial.push_back({"go", {"a", "b"}, DistanceClaim{12.5}});
  c.chain.temporal.push_back({"open", {"a"}, WindowClaim{std::nullopt}});
  c.chain.practical.push_back({"sum", {"a"}, SumClaim{{100, 200}, 300, "USD"}});
  c.answer = "ok";
  CHECK(decode_record<CotRecord>(encode_record(c)) == c);
}

TEST_CASE("enum names parse back") {
  for (auto m : {Modality::kText, Modality::kVisionLanguage}) CHECK(parse_modality(to_string(m)) == m);
  for (auto t : {VlType::kIdentification, VlType::kExperience, VlType::kPractical}) {
    CHECK(parse_vl_type(to_string(t)) == t);
  }
  for (auto s : {Split::kTrain, Split::kTest}) CHECK(parse_split(to_string(s)) == s);
  CHECK_FALSE(parse_split("dev").has_value());
}

TEST_CASE("jsonl reading names the failing line") {
  const auto dir = tt::scratch_dir("core-jsonl");
  const auto path = dir / "pois.jsonl";
  std::vector<Poi> pois = {tt::make_poi("a"), tt::make_poi("b")};
  write_jsonl(path, pois);
  CHECK(read_jsonl<Poi>(path) == pois);
  {
    std::ofstream out(path, std::ios::app);
    out << "\n{\"id\": \n";
  }
  try {
    read_jsonl<Poi>(path);
    FAIL("expected RecordError");
  } catch (const RecordError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK_THROWS_AS(read_jsonl<Poi>(dir / "missing.jsonl"), Error);
}

TEST_CASE("atomic write replaces content and leaves no temp files") {
  const auto dir = tt::scratch_dir("core-atomic");
  write_file_atomic(dir / "out.txt", "first");
  write_file_atomic(dir / "out.txt", "second");
  CHECK(read_file(dir / "out.txt") == "second");
  CHECK(std::distance(std::filesystem::directory_iterator(dir), {}) == 1);
}
