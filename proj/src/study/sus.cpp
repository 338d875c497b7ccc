#include "travelkit/study/sus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "travelkit/core/error.hpp"
#include "travelkit/core/jsonl.hpp"

namespace travelkit::study {
namespace {

double variance(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(xs.size() - 1);
}

std::string fmt(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::vector<std::string> split_row(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

double sus_item_contribution(int index, int raw) {
  if (index < 1 || index > kSusItems) throw Error("SUS item index out of range: " + std::to_string(index));
  if (raw < 1 || raw > 5) {
    throw Error("SUS item " + std::to_string(index) + ": raw score out of range: " + std::to_string(raw));
  }
  return index % 2 == 1 ? (raw - 1) * 2.5 : (5 - raw) * 2.5;
}

double sus_score(const SusResponse& r) {
  double total = 0.0;
  for (int i = 0; i < kSusItems; ++i) total += sus_item_contribution(i + 1, r.items[static_cast<std::size_t>(i)]);
  return total;
}

GroupSummary summarize_group(std::span<const SusResponse> group, const std::string& label) {
  if (group.empty()) throw Error("group '" + label + "' has no responses");
  GroupSummary g;
  g.label = label;
  g.n = group.size();
  std::vector<double> scores;
  std::size_t n_supp = 0;
  for (const auto& r : group) n_supp = std::max(n_supp, r.supplementary.size());
  std::vector<double> supp_sum(n_supp, 0.0);
  std::vector<std::size_t> supp_n(n_supp, 0);
  for (const auto& r : group) {
    scores.push_back(sus_score(r));
    for (int i = 0; i < kSusItems; ++i) {
      g.item_means[static_cast<std::size_t>(i)] += sus_item_contribution(i + 1, r.items[static_cast<std::size_t>(i)]);
    }
    for (std::size_t k = 0; k < r.supplementary.size(); ++k) {
      if (r.supplementary[k] < 1 || r.supplementary[k] > 5) {
        throw Error("supplementary item " + std::to_string(k + 1) + " out of range");
      }
      supp_sum[k] += r.supplementary[k];
      ++supp_n[k];
    }
  }
  const double n = static_cast<double>(g.n);
  for (auto& m : g.item_means) m /= n;
  for (std::size_t k = 0; k < n_supp; ++k) g.supplementary_means.push_back(supp_sum[k] / supp_n[k]);
  g.mean = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
  g.sd = std::sqrt(variance(scores, g.mean));
  if (g.n > 1) {
    boost::math::students_t dist(n - 1);
    const double half = boost::math::quantile(boost::math::complement(dist, 0.025)) * g.sd / std::sqrt(n);
    g.ci95 = std::pair{g.mean - half, g.mean + half};
  }
  return g;
}

StudyReport aggregate_study(std::span<const SusResponse> a, std::span<const SusResponse> b,
                            const std::string& label_a, const std::string& label_b) {
  StudyReport rep;
  rep.a = summarize_group(a, label_a);
  rep.b = summarize_group(b, label_b);
  const double na = static_cast<double>(rep.a.n), nb = static_cast<double>(rep.b.n);
  const double va = rep.a.sd * rep.a.sd, vb = rep.b.sd * rep.b.sd;
  const double diff = rep.a.mean - rep.b.mean;

  const double pooled_df = na + nb - 2.0;
  const double pooled_sd =
      pooled_df > 0 ? std::sqrt(((na - 1) * va + (nb - 1) * vb) / pooled_df) : 0.0;
  if (pooled_sd > 0) {
    rep.cohens_d = diff / pooled_sd;
  } else {
    rep.cohens_d = diff == 0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  }

  const double se2 = va / na + vb / nb;
  if (se2 > 0) {
    rep.t = diff / std::sqrt(se2);
    const double num = se2 * se2;
    double den = 0.0;
    if (na > 1) den += (va / na) * (va / na) / (na - 1);
    if (nb > 1) den += (vb / nb) * (vb / nb) / (nb - 1);
    rep.df = den > 0 ? num / den : std::numeric_limits<double>::infinity();
    boost::math::students_t dist(rep.df);
    rep.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(rep.t)));
  } else {
    rep.t = diff == 0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    rep.df = std::numeric_limits<double>::quiet_NaN();
    rep.p_value = diff == 0 ? 1.0 : 0.0;
  }
  return rep;
}

std::string StudyReport::to_text() const {
  std::ostringstream out;
  for (const GroupSummary* g : {&a, &b}) {
    out << "group " << g->label << ": n=" << g->n << " mean=" << fmt(g->mean) << " sd=" << fmt(g->sd)
        << " ci95=";
    if (g->ci95) {
      out << "[" << fmt(g->ci95->first) << ", " << fmt(g->ci95->second) << "]";
    } else {
      out << "undefined (n=1)";
    }
    out << "\n  item contributions:";
    for (double m : g->item_means) out << " " << fmt(m);
    if (!g->supplementary_means.empty()) {
      out << "\n  supplementary means:";
      for (double m : g->supplementary_means) out << " " << fmt(m);
    }
    out << "\n";
  }
  out << "cohens_d=" << fmt(cohens_d, 3) << " welch_t=" << fmt(t, 3) << " df=" << fmt(df, 1)
      << " p=" << (p_value < 1e-4 ? std::string("<0.0001") : fmt(p_value, 4)) << "\n";
  return out.str();
}

TotalCheck check_reported_total(std::span<const double> item_means, double reported, double tolerance) {
  TotalCheck c;
  c.item_sum = std::accumulate(item_means.begin(), item_means.end(), 0.0);
  c.reported = reported;
  c.consistent = std::fabs(c.item_sum - reported) <= tolerance;
  return c;
}

std::vector<SusResponse> parse_responses(const std::string& text,
                                         const std::optional<std::string>& group_column) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  char sep = ',';
  std::map<std::string, std::size_t> col;
  std::vector<SusResponse> out;
  std::vector<std::size_t> supp_cols;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (header.empty()) {
      sep = line.find('\t') != std::string::npos ? '\t' : line.find(';') != std::string::npos ? ';' : ',';
      header = split_row(line, sep);
      for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
      for (int q = 1; q <= kSusItems; ++q) {
        if (!col.contains("q" + std::to_string(q))) throw RecordError("missing column q" + std::to_string(q), line_no);
      }
      if (group_column && !col.contains(*group_column)) {
        throw RecordError("missing group column '" + *group_column + "'", line_no);
      }
      for (int s = 1; col.contains("s" + std::to_string(s)); ++s) supp_cols.push_back(col["s" + std::to_string(s)]);
      continue;
    }
    const auto cells = split_row(line, sep);
    if (cells.size() != header.size()) {
      throw RecordError("expected " + std::to_string(header.size()) + " cells, got " +
                            std::to_string(cells.size()),
                        line_no);
    }
    auto as_int = [&](std::size_t c) {
      const std::string& cell = cells[c];
      int v = 0;
      std::size_t used = 0;
      try {
        v = std::stoi(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (cell.empty() || used != cell.size()) throw RecordError("column " + header[c] + ": not an integer", line_no);
      if (v < 1 || v > 5) throw RecordError("column " + header[c] + ": outside 1..5", line_no);
      return v;
    };
    SusResponse r;
    for (int q = 1; q <= kSusItems; ++q) r.items[static_cast<std::size_t>(q - 1)] = as_int(col["q" + std::to_string(q)]);
    for (auto c : supp_cols) r.supplementary.push_back(as_int(c));
    if (group_column) r.group = cells[col[*group_column]];
    out.push_back(std::move(r));
  }
  if (header.empty()) throw Error("responses table is empty");
  return out;
}

std::vector<SusResponse> read_responses(const std::filesystem::path& path,
                                        const std::optional<std::string>& group_column) {
  return parse_responses(read_file(path), group_column);
}

}  // namespace travelkit::study
