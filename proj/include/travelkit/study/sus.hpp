#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace travelkit::study {

inline constexpr int kSusItems = 10;

struct SusResponse {
  std::array<int, kSusItems> items{};  // raw 1..5
  // Extra questions on the same 1..5 scale, reported untransformed.
  std::vector<int> supplementary;
  std::string group;
};

// Odd items (1-based) score (raw-1)*2.5, even items (5-raw)*2.5. Throws
// Error when index or raw is out of range.
double sus_item_contribution(int index, int raw);
// Sum of the ten contributions, in [0, 100].
double sus_score(const SusResponse& r);

struct GroupSummary {
  std::string label;
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;
  // 95% t-interval for the mean; absent for a single response.
  std::optional<std::pair<double, double>> ci95;
  std::array<double, kSusItems> item_means{};  // 0..10 contributions
  std::vector<double> supplementary_means;     // 1..5
};

struct StudyReport {
  GroupSummary a;
  GroupSummary b;
  double cohens_d = 0.0;  // (mean_a - mean_b) / pooled sd
  double t = 0.0;         // Welch
  double df = 0.0;
  double p_value = 1.0;  // two-sided

  std::string to_text() const;
};

// Throws Error on an empty group.
GroupSummary summarize_group(std::span<const SusResponse> group, const std::string& label);
StudyReport aggregate_study(std::span<const SusResponse> a, std::span<const SusResponse> b,
                            const std::string& label_a = "A", const std::string& label_b = "B");

// A published table lists per-item mean contributions and a total; the total
// of a linear score must equal the item sum.
struct TotalCheck {
  double item_sum = 0.0;
  double reported = 0.0;
  bool consistent = true;
};
TotalCheck check_reported_total(std::span<const double> item_means, double reported,
                                double tolerance = 0.05);

// Delimited table with a header row. Columns q1..q10 hold the raw items,
// s1..sN optional supplementary items; group_column (when given) names the
// group of each row. Comma, semicolon or tab separated.
std::vector<SusResponse> parse_responses(const std::string& text,
                                         const std::optional<std::string>& group_column);
std::vector<SusResponse> read_responses(const std::filesystem::path& path,
                                        const std::optional<std::string>& group_column);

}  // namespace travelkit::study
