#include "travelkit/plan/solver.hpp"

#include <algorithm>
#include <numeric>

#include "travelkit/core/error.hpp"

namespace travelkit::plan {
namespace {

int round_up_to_grid(int minutes) {
  return (minutes + kTimeGrid - 1) / kTimeGrid * kTimeGrid;
}

std::size_t locked_count(const Itinerary& it, const PlanInstance& inst) {
  std::size_t n = 0;
  for (const auto& v : it.visits) n += inst.locked.contains(v.poi_id);
  return n;
}

// Candidates that can appear in any itinerary, sorted by id, with their
// usable windows and pairwise travel times precomputed.
struct Prepared {
  std::vector<const Poi*> pois;
  std::vector<std::vector<TimeWindow>> windows;
  std::vector<std::vector<int>> travel;
  std::vector<std::int64_t> cost;
  std::vector<bool> locked;
};

Prepared prepare(const PlanInstance& inst) {
  Prepared p;
  for (const auto& poi : inst.candidates) {
    bool ok = poi.price.currency == inst.budget.currency;
    for (const auto& flag : inst.accessibility) ok &= poi.accessibility.contains(flag);
    if (ok) p.pois.push_back(&poi);
  }
  std::sort(p.pois.begin(), p.pois.end(), [](const Poi* a, const Poi* b) { return a->id < b->id; });
  for (const Poi* poi : p.pois) {
    std::vector<TimeWindow> ws;
    for (const auto& w : poi->windows_on(inst.weekday)) {
      auto clipped = window_overlap(w, inst.day_window);
      if (clipped && clipped->length() >= poi->visit_duration) ws.push_back(*clipped);
    }
    std::sort(ws.begin(), ws.end());
    p.windows.push_back(std::move(ws));
    p.cost.push_back(inst.cost_of(*poi).amount);
    p.locked.push_back(inst.locked.contains(poi->id));
  }
  p.travel.assign(p.pois.size(), std::vector<int>(p.pois.size(), 0));
  for (std::size_t i = 0; i < p.pois.size(); ++i) {
    for (std::size_t j = 0; j < p.pois.size(); ++j) {
      p.travel[i][j] = inst.travel_minutes(*p.pois[i], *p.pois[j]);
    }
  }
  return p;
}

struct Node {
  std::vector<std::size_t> seq;
  std::vector<int> starts;
  std::vector<bool> visited;
  int clock = 0;
  std::int64_t spent = 0;
  double utility = 0.0;
  std::size_t locked = 0;
};

// Earliest start for candidate j after node, or -1.
int earliest_start(const Prepared& p, const PlanInstance& inst, const Node& node, std::size_t j) {
  const int ready = node.seq.empty() ? inst.day_window.start
                                     : node.clock + p.travel[node.seq.back()][j];
  const int duration = p.pois[j]->visit_duration;
  for (const auto& w : p.windows[j]) {
    const int s = round_up_to_grid(std::max(ready, w.start));
    if (s + duration <= w.end) return s;
  }
  return -1;
}

double set_utility(const Prepared& p, const std::vector<bool>& visited) {
  double u = 0.0;
  for (std::size_t i = 0; i < visited.size(); ++i) {
    if (visited[i]) u += p.pois[i]->utility;
  }
  return u;
}

bool node_before(const Node& a, const Node& b) {
  if (a.locked != b.locked) return a.locked > b.locked;
  if (a.utility != b.utility) return a.utility > b.utility;
  const int fa = a.seq.empty() ? 0 : a.clock;
  const int fb = b.seq.empty() ? 0 : b.clock;
  if (fa != fb) return fa < fb;
  return a.seq < b.seq;  // index order is id order
}

Itinerary to_itinerary(const Prepared& p, const PlanInstance& inst, const Node& node) {
  Itinerary it;
  it.total_cost = Money{node.spent, inst.budget.currency};
  for (std::size_t k = 0; k < node.seq.size(); ++k) {
    const Poi& poi = *p.pois[node.seq[k]];
    it.visits.push_back({poi.id, node.starts[k], node.starts[k] + poi.visit_duration});
  }
  it.total_utility = node.utility;
  return it;
}

}  // namespace

double canonical_utility(const Itinerary& it, const PlanInstance& inst) {
  std::vector<const Poi*> visited;
  for (const auto& v : it.visits) {
    if (const Poi* p = inst.find(v.poi_id)) visited.push_back(p);
  }
  std::sort(visited.begin(), visited.end(), [](const Poi* a, const Poi* b) { return a->id < b->id; });
  double u = 0.0;
  for (const Poi* p : visited) u += p->utility;
  return u;
}

bool ranks_before(const Itinerary& a, const Itinerary& b, const PlanInstance& inst) {
  const auto la = locked_count(a, inst), lb = locked_count(b, inst);
  if (la != lb) return la > lb;
  const double ua = canonical_utility(a, inst), ub = canonical_utility(b, inst);
  if (ua != ub) return ua > ub;
  if (a.finish() != b.finish()) return a.finish() < b.finish();
  std::vector<std::string> ia, ib;
  for (const auto& v : a.visits) ia.push_back(v.poi_id);
  for (const auto& v : b.visits) ib.push_back(v.poi_id);
  return ia < ib;
}

namespace {

// Best schedule under the shared ranking, locks preferred but not enforced.
Itinerary search(const PlanInstance& inst, std::size_t beam_width) {
  const Prepared p = prepare(inst);
  const std::size_t n = p.pois.size();
  Node root;
  root.visited.assign(n, false);
  Node best = root;
  std::vector<Node> frontier{root};
  while (!frontier.empty()) {
    std::vector<Node> children;
    for (const auto& node : frontier) {
      for (std::size_t j = 0; j < n; ++j) {
        if (node.visited[j]) continue;
        if (node.spent + p.cost[j] > inst.budget.amount) continue;
        const int start = earliest_start(p, inst, node, j);
        if (start < 0) continue;
        Node child = node;
        child.seq.push_back(j);
        child.starts.push_back(start);
        child.visited[j] = true;
        child.clock = start + p.pois[j]->visit_duration;
        child.spent += p.cost[j];
        child.utility = set_utility(p, child.visited);
        child.locked += p.locked[j];
        children.push_back(std::move(child));
      }
    }
    std::sort(children.begin(), children.end(), node_before);
    if (!children.empty() && node_before(children.front(), best)) best = children.front();
    if (beam_width != kUnboundedBeam && children.size() > beam_width) children.resize(beam_width);
    frontier = std::move(children);
  }
  return to_itinerary(p, inst, best);
}

// An itinerary that misses a locked POI is not a plan.
Itinerary enforce_locks(Itinerary it, const PlanInstance& inst) {
  if (locked_count(it, inst) == inst.locked.size()) return it;
  Itinerary none;
  none.total_cost = Money{0, inst.budget.currency};
  return none;
}

}  // namespace

Itinerary solve(const PlanInstance& inst, std::size_t beam_width) {
  return enforce_locks(search(inst, beam_width), inst);
}

Itinerary brute_force(const PlanInstance& inst) {
  if (inst.candidates.size() > kBruteForceLimit) {
    throw Error("brute force refuses " + std::to_string(inst.candidates.size()) +
                " candidates (limit " + std::to_string(kBruteForceLimit) + ")");
  }
  std::vector<const Poi*> pois;
  for (const auto& poi : inst.candidates) pois.push_back(&poi);
  std::sort(pois.begin(), pois.end(), [](const Poi* a, const Poi* b) { return a->id < b->id; });
  const std::size_t n = pois.size();

  // Lay out a fixed order at earliest starts; nullopt if any visit fails.
  auto schedule = [&](const std::vector<std::size_t>& order) -> std::optional<Itinerary> {
    Itinerary it;
    it.total_cost = Money{0, inst.budget.currency};
    int clock = inst.day_window.start;
    const Poi* prev = nullptr;
    for (auto idx : order) {
      const Poi& poi = *pois[idx];
      if (poi.price.currency != inst.budget.currency) return std::nullopt;
      for (const auto& flag : inst.accessibility) {
        if (!poi.accessibility.contains(flag)) return std::nullopt;
      }
      const int ready = prev ? clock + inst.travel_minutes(*prev, poi) : inst.day_window.start;
      std::optional<int> start;
      auto windows = poi.windows_on(inst.weekday);
      std::sort(windows.begin(), windows.end());
      for (const auto& w : windows) {
        const int lo = std::max({ready, w.start, inst.day_window.start});
        const int s = (lo + kTimeGrid - 1) / kTimeGrid * kTimeGrid;
        if (s + poi.visit_duration <= std::min(w.end, inst.day_window.end)) {
          start = s;
          break;
        }
      }
      if (!start) return std::nullopt;
      it.visits.push_back({poi.id, *start, *start + poi.visit_duration});
      it.total_cost.amount += poi.price.amount * inst.group_size;
      clock = *start + poi.visit_duration;
      prev = &poi;
    }
    if (it.total_cost.amount > inst.budget.amount) return std::nullopt;
    it.total_utility = canonical_utility(it, inst);
    return it;
  };

  Itinerary best;
  best.total_cost = Money{0, inst.budget.currency};
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) order.push_back(i);
    }
    do {
      auto it = schedule(order);
      if (it && ranks_before(*it, best, inst)) best = std::move(*it);
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return enforce_locks(std::move(best), inst);
}

std::vector<Itinerary> solve_days(const PlanInstance& inst, std::span<const int> weekdays,
                                  std::size_t beam_width) {
  std::vector<Itinerary> days;
  PlanInstance day = inst;
  for (int weekday : weekdays) {
    day.weekday = weekday;
    auto it = search(day, beam_width);
    for (const auto& v : it.visits) {
      std::erase_if(day.candidates, [&](const Poi& p) { return p.id == v.poi_id; });
      day.locked.erase(v.poi_id);
    }
    day.budget.amount -= it.total_cost.amount;
    days.push_back(std::move(it));
  }
  return days;
}

}  // namespace travelkit::plan
