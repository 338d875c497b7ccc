#include "travelkit/cot/reasoner.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>

#include "travelkit/core/geo.hpp"

namespace travelkit::cot {

std::vector<std::string> nearest_neighbor_order(const std::vector<Poi>& candidates) {
  std::vector<std::string> order;
  if (candidates.empty()) return order;
  std::vector<bool> used(candidates.size(), false);
  std::size_t current = 0;
  used[0] = true;
  order.push_back(candidates[0].id);
  for (std::size_t hop = 1; hop < candidates.size(); ++hop) {
    std::size_t best = candidates.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      if (used[j]) continue;
      const double d = great_circle_meters(candidates[current].location, candidates[j].location);
      if (d < best_d || (d == best_d && candidates[j].id < candidates[best].id)) {
        best = j;
        best_d = d;
      }
    }
    used[best] = true;
    current = best;
    order.push_back(candidates[best].id);
  }
  return order;
}

namespace {

std::string km(double meters) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f km", meters / 1000.0);
  return buf;
}

}  // namespace

CoTChain ReferenceReasoner::reason(const QueryContext& ctx) const {
  if (ctx.candidates.empty()) throw Error("empty candidate set");
  const auto& cons = ctx.constraints;
  const auto order = nearest_neighbor_order(ctx.candidates);
  CoTChain chain;

  const Poi* prev = nullptr;
  for (const auto& id : order) {
    const Poi& poi = *ctx.find(id);
    if (!prev) {
      chain.spatial.push_back({"Start at " + poi.name + ".", {poi.id}, DistanceClaim{0.0}});
    } else {
      const double d = great_circle_meters(prev->location, poi.location);
      chain.spatial.push_back({"Go " + km(d) + " from " + prev->name + " to the nearest unvisited stop, " +
                                   poi.name + ".",
                               {prev->id, poi.id},
                               DistanceClaim{d}});
    }
    prev = &poi;
  }

  std::set<std::string> schedulable;
  for (const auto& id : order) {
    const Poi& poi = *ctx.find(id);
    auto w = visit_window(poi, cons);
    if (w) {
      schedulable.insert(id);
      chain.temporal.push_back({poi.name + " is available " + format_clock(w->start) + "-" +
                                    format_clock(w->end) + "; a " +
                                    std::to_string(poi.visit_duration) + "-minute visit fits.",
                                {poi.id},
                                WindowClaim{w}});
    } else {
      chain.temporal.push_back({"Conflict: " + poi.name + " cannot host a " +
                                    std::to_string(poi.visit_duration) +
                                    "-minute visit within " + format_clock(cons.day_window.start) +
                                    "-" + format_clock(cons.day_window.end) + ".",
                                {poi.id},
                                WindowClaim{std::nullopt}});
    }
  }

  const std::string currency = cons.budget ? cons.budget->currency : ctx.candidates.front().price.currency;
  SumClaim running{{}, 0, currency};
  for (const auto& id : order) {
    const Poi& poi = *ctx.find(id);
    std::string missing;
    for (const auto& flag : cons.accessibility) {
      if (!poi.accessibility.contains(flag)) missing += (missing.empty() ? "" : ", ") + flag;
    }
    if (!schedulable.contains(id)) {
      chain.practical.push_back({"Skip " + poi.name + ": no feasible visit time.", {poi.id}, {}});
    } else if (!missing.empty()) {
      chain.practical.push_back({"Skip " + poi.name + ": lacks " + missing + ".", {poi.id}, {}});
    } else if (poi.price.currency != currency) {
      chain.practical.push_back(
          {"Skip " + poi.name + ": priced in " + poi.price.currency + ".", {poi.id}, {}});
    } else {
      const auto cost = poi.price.times(cons.group_size);
      running.terms.push_back(cost.amount);
      running.total += cost.amount;
      std::string text = "Add " + poi.name + ": " + format_money(poi.price) + " x " +
                         std::to_string(cons.group_size) + " = " + format_money(cost) +
                         "; running total " + format_money(Money{running.total, currency});
      if (cons.budget) {
        text += running.total <= cons.budget->amount ? " (within budget)" : " (exceeds budget)";
      }
      chain.practical.push_back({text + ".", {poi.id}, running});
    }
  }
  return chain;
}

CoTChain reference_reason(const QueryContext& ctx) { return ReferenceReasoner{}.reason(ctx); }

std::vector<std::string> infeasible_in_chain(const CoTChain& chain) {
  std::set<std::string> out;
  for (const auto& step : chain.temporal) {
    const auto* w = std::get_if<WindowClaim>(&step.payload);
    if (w && !w->window && !step.refs.empty()) out.insert(step.refs.front());
  }
  for (const auto& step : chain.practical) {
    // Accepted stops carry the running sum; skipped ones carry nothing.
    if (std::holds_alternative<std::monostate>(step.payload) && !step.refs.empty()) {
      out.insert(step.refs.front());
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace travelkit::cot
