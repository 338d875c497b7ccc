#include <cmath>
#include <numeric>

#include "builders.hpp"
#include "doctest.h"
#include "travelkit/core/jsonl.hpp"
#include "travelkit/study/sus.hpp"

using namespace travelkit;
using namespace travelkit::study;
namespace tt = travelkit::testing;

namespace {

// A response whose ten contributions add up to score (a multiple of 2.5).
SusResponse with_score(double score, const std::string& group = "") {
  int units = static_cast<int>(std::lround(score / 2.5));
  SusResponse r;
  r.group = group;
  for (int i = 0; i < kSusItems; ++i) {
    const int u = std::min(4, units);
    units -= u;
    r.items[static_cast<std::size_t>(i)] = i % 2 == 0 ? u + 1 : 5 - u;
  }
  return r;
}

std::vector<SusResponse> scores(std::initializer_list<double> xs) {
  std::vector<SusResponse> out;
  for (double x : xs) out.push_back(with_score(x));
  return out;
}

}  // namespace

TEST_CASE("item contributions") {
  CHECK(sus_item_contribution(1, 5) == 10.0);
  CHECK(sus_item_contribution(1, 1) == 0.0);
  CHECK(sus_item_contribution(2, 1) == 10.0);
  CHECK(sus_item_contribution(2, 5) == 0.0);
  CHECK(sus_item_contribution(9, 4) == 7.5);
  CHECK(sus_item_contribution(10, 2) == 7.5);
  CHECK_THROWS_AS(sus_item_contribution(0, 3), Error);
  CHECK_THROWS_AS(sus_item_contribution(11, 3), Error);
  CHECK_THROWS_AS(sus_item_contribution(3, 6), Error);
}

TEST_CASE("scores") {
  SusResponse r;
  r.items.fill(3);
  CHECK(sus_score(r) == 50.0);
  r.items = {5, 1, 5, 1, 5, 1, 5, 1, 5, 1};
  CHECK(sus_score(r) == 100.0);
  r.items = {1, 5, 1, 5, 1, 5, 1, 5, 1, 5};
  CHECK(sus_score(r) == 0.0);
  r.items = {4, 2, 5, 1, 4, 2, 4, 2, 3, 3};  // 7.5+7.5+10+10+7.5+7.5+7.5+7.5+5+5
  CHECK(sus_score(r) == 75.0);
  for (double s : {0.0, 2.5, 47.5, 82.5, 100.0}) CHECK(sus_score(with_score(s)) == s);
}

TEST_CASE("group summary against scipy") {
  // scipy.stats.t.interval(0.95, 4, loc=mean, scale=sem)
  const auto g = summarize_group(scores({85, 72.5, 90, 77.5, 82.5}), "A");
  CHECK(g.n == 5);
  CHECK(g.mean == doctest::Approx(81.5));
  CHECK(g.sd == doctest::Approx(6.754628043053148));
  REQUIRE(g.ci95.has_value());
  CHECK(g.ci95->first == doctest::Approx(73.11302153768335));
  CHECK(g.ci95->second == doctest::Approx(89.88697846231665));
  const double item_total = std::accumulate(g.item_means.begin(), g.item_means.end(), 0.0);
  CHECK(item_total == doctest::Approx(g.mean));

  const auto one = summarize_group(scores({70}), "solo");
  CHECK_FALSE(one.ci95.has_value());
  CHECK(one.sd == 0.0);
  CHECK_THROWS_AS(summarize_group({}, "none"), Error);
}

TEST_CASE("two-group comparison against scipy") {
  // scipy.stats.ttest_ind(a, b, equal_var=False)
  const auto a = scores({85, 72.5, 90, 77.5, 82.5});
  const auto b = scores({70, 75, 62.5, 80});
  const auto r = aggregate_study(a, b, "ours", "other");
  CHECK(r.t == doctest::Approx(2.004456295804182));
  CHECK(r.df == doctest::Approx(6.2165915096323605));
  CHECK(r.p_value == doctest::Approx(0.090199407969599));
  CHECK(r.cohens_d == doctest::Approx(1.3617886308989935));
  CHECK(r.a.label == "ours");
  const auto text = r.to_text();
  CHECK(text.find("group ours: n=5") != std::string::npos);
  CHECK(text.find("welch_t=2.004") != std::string::npos);

  const auto rev = aggregate_study(b, a);
  CHECK(rev.t == doctest::Approx(-r.t));
  CHECK(rev.cohens_d == doctest::Approx(-r.cohens_d));
  CHECK(rev.p_value == doctest::Approx(r.p_value));
}

TEST_CASE("degenerate variance") {
  const auto same = aggregate_study(scores({50, 50}), scores({50, 50, 50}));
  CHECK(same.cohens_d == 0.0);
  CHECK(same.t == 0.0);
  CHECK(same.p_value == 1.0);
  const auto apart = aggregate_study(scores({60, 60}), scores({50, 50}));
  CHECK(std::isinf(apart.cohens_d));
  CHECK(apart.cohens_d > 0);
  CHECK(apart.p_value == 0.0);
}

TEST_CASE("reported totals") {
  const std::array<double, 10> items = {8.0, 7.3, 7.8, 7.5, 7.7, 8.0, 6.9, 7.8, 8.1, 7.2};
  auto c = check_reported_total(items, 76.3);
  CHECK(c.consistent);
  CHECK(c.item_sum == doctest::Approx(76.3));
  c = check_reported_total(items, 76.4);
  CHECK_FALSE(c.consistent);
  CHECK(check_reported_total(items, 76.34).consistent);
}

TEST_CASE("response tables") {
  const std::string csv =
      "participant,group,q1,q2,q3,q4,q5,q6,q7,q8,q9,q10,s1,s2\n"
      "p1,ours,5,1,5,1,5,1,5,1,5,1,4,5\n"
      "p2,other,3,3,3,3,3,3,3,3,3,3,2,3\n";
  const auto rows = parse_responses(csv, std::string("group"));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].group == "ours");
  CHECK(sus_score(rows[0]) == 100.0);
  CHECK(rows[1].supplementary == std::vector<int>{2, 3});

  const std::string tsv = "q1\tq2\tq3\tq4\tq5\tq6\tq7\tq8\tq9\tq10\n3\t3\t3\t3\t3\t3\t3\t3\t3\t3\n";
  CHECK(sus_score(parse_responses(tsv, std::nullopt).at(0)) == 50.0);
  const std::string semi = "q1;q2;q3;q4;q5;q6;q7;q8;q9;q10\n3;3;3;3;3;3;3;3;3;3\n";
  CHECK(parse_responses(semi, std::nullopt).size() == 1);

  try {
    parse_responses("q1,q2,q3,q4,q5,q6,q7,q8,q9,q10\n3,3,3,3,3,3,3,3,3,3\n3,3,3,9,3,3,3,3,3,3\n", std::nullopt);
    FAIL("expected RecordError");
  } catch (const RecordError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_responses("q1,q2\n1,2\n", std::nullopt), RecordError);
  CHECK_THROWS_AS(parse_responses(csv, std::string("cohort")), RecordError);

  const auto dir = tt::scratch_dir("study");
  write_file_atomic(dir / "r.csv", csv);
  CHECK(read_responses(dir / "r.csv", std::string("group")).size() == 2);
}
