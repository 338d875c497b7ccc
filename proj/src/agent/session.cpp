#include "travelkit/agent/session.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "travelkit/core/geo.hpp"
#include "travelkit/plan/feasibility.hpp"

namespace travelkit::agent {
namespace {

constexpr std::array<std::string_view, 5> kOutcomeNames = {"completed", "clarification", "incomplete",
                                                           "infeasible", "infeasible-lock"};

// What the reasoning stage knows about a POI before any tool answers:
// everything except hours and price.
Poi without_live_fields(const Poi& p) {
  Poi c = p;
  c.hours.clear();
  c.price = Money{0, p.price.currency};
  return c;
}

std::vector<Poi> shortlist(const tools::FixtureStore& fx, const std::string& city,
                           const std::set<std::string>& accessibility,
                           const std::optional<std::string>& landmark, std::size_t k) {
  std::vector<const Poi*> pool;
  for (const Poi* p : fx.pois().in_city(city)) {
    if (std::all_of(accessibility.begin(), accessibility.end(),
                    [&](const std::string& f) { return p->accessibility.contains(f); })) {
      pool.push_back(p);
    }
  }
  const Poi* anchor = nullptr;
  if (landmark) {
    auto it = std::find_if(pool.begin(), pool.end(), [&](const Poi* p) { return p->id == *landmark; });
    if (it != pool.end()) anchor = *it;
  }
  if (anchor) {
    // Nearby attractions around the photographed landmark.
    std::stable_sort(pool.begin(), pool.end(), [&](const Poi* a, const Poi* b) {
      const double da = a == anchor ? -1.0 : great_circle_meters(anchor->location, a->location);
      const double db = b == anchor ? -1.0 : great_circle_meters(anchor->location, b->location);
      if (da != db) return da < db;
      return a->id < b->id;
    });
  } else {
    std::stable_sort(pool.begin(), pool.end(), [](const Poi* a, const Poi* b) {
      if (a->utility != b->utility) return a->utility > b->utility;
      return a->id < b->id;
    });
  }
  if (pool.size() > k) pool.resize(k);
  std::vector<Poi> out;
  for (const Poi* p : pool) out.push_back(*p);
  return out;
}

CoTChain reason_over(const PlanState& state, const SessionTrace& trace, const tools::FixtureStore& fx,
                     const Adapters& adapters) {
  cot::QueryContext ctx;
  ctx.query = trace.query;
  if (trace.image) ctx.visual = ImageRef{*trace.image, "street"};
  for (const auto& c : state.draft.candidates) ctx.candidates.push_back(fx.pois().at(c.id));
  ctx.constraints.day_window = state.draft.day_window;
  ctx.constraints.weekday = state.draft.weekday;
  ctx.constraints.budget = state.draft.budget;
  ctx.constraints.group_size = state.draft.group_size;
  ctx.constraints.accessibility = state.draft.accessibility;
  const cot::ReferenceReasoner fallback;
  const cot::Reasoner& reasoner = adapters.reasoner ? *adapters.reasoner : fallback;
  return reasoner.reason(ctx);
}

void add_needs_for(PlanState& state, const Poi& poi, bool want_reviews) {
  state.pending.insert({tools::Tool::kHours, poi.id, ""});
  state.pending.insert({tools::Tool::kPrice, poi.id, ""});
  if (want_reviews) state.pending.insert({tools::Tool::kReviews, poi.id, ""});
  for (const auto& other : state.draft.candidates) {
    if (other.id == poi.id) continue;
    const auto& [a, b] = std::minmax(poi.id, other.id);
    state.pending.insert({tools::Tool::kTransit, a, b});
  }
}

void run_tools(SessionTrace& trace, const tools::FixtureStore& fx, const Adapters& adapters) {
  const ToolPolicy policy = adapters.policy ? adapters.policy : ToolPolicy(select_tool);
  for (int i = 0; i < trace.config.max_steps; ++i) {
    auto tc = policy(trace.state);
    if (!tc) break;
    const Need need = need_of(*tc);
    if (!trace.state.pending.contains(need) && !trace.state.resolved.contains(need)) {
      throw Error("tool policy selected a call nobody asked for: " + tc->request_id);
    }
    auto response = tools::call(*tc, fx);
    trace.calls.push_back({*tc, response});
    if (response.status == tools::ToolStatus::kOk && response.payload) {
      trace.state = update_plan(std::move(trace.state), Observation{*tc, *response.payload, trace.state.t});
    } else if (trace.state.pending.contains(need)) {
      trace.state = mark_unresolvable(std::move(trace.state), need);
    } else {
      ++trace.state.t;
    }
  }
}

plan::PlanInstance integrated_instance(const PlanState& plan_t, std::span<const Observation> obs,
                                       const CoTChain& r) {
  std::map<std::string, std::vector<OpeningHours>> hours;
  std::map<std::string, Money> price;
  std::map<std::string, tools::ReviewInfo> reviews;
  plan::PlanInstance inst = plan_t.draft;
  inst.travel_edges.clear();
  for (const auto& o : obs) {
    if (const auto* h = std::get_if<tools::HoursInfo>(&o.payload)) hours[h->poi_id] = h->hours;
    if (const auto* p = std::get_if<tools::PriceInfo>(&o.payload)) price[p->poi_id] = p->price;
    if (const auto* v = std::get_if<tools::ReviewInfo>(&o.payload)) reviews[v->poi_id] = *v;
    if (const auto* t = std::get_if<tools::TransitInfo>(&o.payload)) {
      inst.travel_edges[{t->from, t->to}] = t->minutes;
    }
  }
  for (const auto& need : plan_t.unresolvable) {
    if (need.tool == tools::Tool::kTransit) {
      inst.travel_edges[{need.subject, need.other}] = plan::kUnreachableMinutes;
    }
  }
  const auto flagged = cot::infeasible_in_chain(r);
  const std::set<std::string> infeasible(flagged.begin(), flagged.end());
  inst.candidates.clear();
  for (Poi c : plan_t.draft.candidates) {
    if (plan_t.excluded.contains(c.id)) continue;
    if (infeasible.contains(c.id) && !plan_t.draft.locked.contains(c.id)) continue;
    auto h = hours.find(c.id);
    auto p = price.find(c.id);
    if (h == hours.end() || p == price.end()) continue;
    c.hours = h->second;
    c.price = p->second;
    if (auto rv = reviews.find(c.id); rv != reviews.end() && rv->second.count > 0) {
      c.utility *= rv->second.mean_rating / 5.0;
    }
    inst.candidates.push_back(std::move(c));
  }
  return inst;
}

std::vector<int> weekdays_of(const PlanState& plan_t) {
  std::vector<int> out;
  for (int i = 0; i < std::max(plan_t.days, 1); ++i) out.push_back((plan_t.draft.weekday + i) % 7);
  return out;
}

// Generate, verify and classify. notes may already carry reasons from
// earlier stages.
void integrate(SessionTrace& trace) {
  const PlanState& st = trace.state;
  bool incomplete = false;
  for (const auto& need : st.pending) {
    if (is_blocking(need)) {
      incomplete = true;
      trace.notes.push_back("unresolved " + std::string(tools::to_string(need.tool)) + " for " +
                            need.subject + (need.other.empty() ? "" : " -> " + need.other));
    }
  }
  // A blocking need the tool could not answer leaves the plan as
  // uninformed as one never asked.
  for (const auto& need : st.unresolvable) {
    incomplete = incomplete || is_blocking(need);
    trace.notes.push_back("tool could not answer " + std::string(tools::to_string(need.tool)) +
                          " for " + need.subject + (need.other.empty() ? "" : " -> " + need.other));
  }
  // Tool observations win over the recognizer's guess.
  for (const auto& [need, obs] : st.resolved) {
    if (const auto* loc = std::get_if<tools::LocateInfo>(&obs.payload)) {
      if (trace.spec.landmark && *trace.spec.landmark != loc->poi_id) {
        trace.notes.push_back("landmark located as " + loc->poi_id + ", not " + *trace.spec.landmark);
      }
      const auto& planned_city = st.draft.candidates.empty() ? loc->city : st.draft.candidates.front().city;
      if (loc->city != planned_city) {
        incomplete = true;
        trace.notes.push_back("landmark is in " + loc->city + " but the plan covers " + planned_city);
      }
    }
  }

  const auto obs = trace.observations();
  trace.days = generate(st, obs, st.chain, trace.config.beam_width);
  trace.violations = verify_plan(st, obs, st.chain, trace.days);

  const bool lock_missing = std::any_of(trace.violations.begin(), trace.violations.end(),
                                        [](const std::string& v) { return v.starts_with("locked"); });
  const bool nothing = std::all_of(trace.days.begin(), trace.days.end(),
                                   [](const plan::Itinerary& d) { return d.empty(); });
  if (incomplete) {
    trace.outcome = Outcome::kIncomplete;
  } else if (lock_missing) {
    trace.outcome = Outcome::kInfeasibleLock;
  } else if (!trace.violations.empty() || nothing) {
    trace.outcome = Outcome::kInfeasible;
    if (nothing) trace.notes.push_back("no feasible plan");
  } else {
    trace.outcome = Outcome::kCompleted;
  }
}

}  // namespace

std::string_view to_string(Outcome o) { return kOutcomeNames[static_cast<std::size_t>(o)]; }

std::optional<Outcome> parse_outcome(std::string_view s) {
  for (std::size_t i = 0; i < kOutcomeNames.size(); ++i) {
    if (kOutcomeNames[i] == s) return static_cast<Outcome>(i);
  }
  return std::nullopt;
}

Money SessionTrace::total_cost() const {
  Money total{0, state.draft.budget.currency};
  for (const auto& d : days) total.amount += d.total_cost.amount;
  return total;
}

std::vector<Observation> SessionTrace::observations() const {
  std::vector<Observation> out;
  for (std::size_t i = 0; i < calls.size(); ++i) {
    const auto& e = calls[i];
    if (e.response.status == tools::ToolStatus::kOk && e.response.payload) {
      out.push_back({e.call, *e.response.payload, static_cast<int>(i)});
    }
  }
  return out;
}

std::vector<plan::Itinerary> generate(const PlanState& plan_t, std::span<const Observation> obs,
                                      const CoTChain& r, std::size_t beam_width) {
  const auto inst = integrated_instance(plan_t, obs, r);
  const auto weekdays = weekdays_of(plan_t);
  return plan::solve_days(inst, weekdays, beam_width);
}

std::vector<std::string> verify_plan(const PlanState& plan_t, std::span<const Observation> obs,
                                     const CoTChain& r, const std::vector<plan::Itinerary>& days) {
  std::vector<std::string> out;
  plan::PlanInstance inst = integrated_instance(plan_t, obs, r);
  const auto locked = inst.locked;
  inst.locked.clear();
  const auto weekdays = weekdays_of(plan_t);
  std::set<std::string> visited;
  std::int64_t spent = 0;
  for (std::size_t d = 0; d < days.size(); ++d) {
    plan::PlanInstance day = inst;
    day.weekday = d < weekdays.size() ? weekdays[d] : inst.weekday;
    day.budget.amount = inst.budget.amount - spent;
    for (const auto& v : plan::feasible(days[d], day).violations) {
      out.push_back("day " + std::to_string(d + 1) + ": " + v);
    }
    for (const auto& v : days[d].visits) {
      if (!visited.insert(v.poi_id).second) {
        out.push_back("day " + std::to_string(d + 1) + ": " + v.poi_id + " already visited");
      }
    }
    spent += days[d].total_cost.amount;
  }
  for (const auto& id : locked) {
    if (!visited.contains(id)) out.push_back("locked POI '" + id + "' missing");
  }
  return out;
}

SessionTrace run_session(const std::string& message, const std::optional<std::string>& visual,
                         const SessionConfig& config, const tools::FixtureStore& fixtures,
                         const Adapters& adapters) {
  if (config.max_steps < 1) throw Error("max_steps must be at least 1");
  if (config.shortlist_size < 1) throw Error("shortlist_size must be at least 1");
  SessionTrace trace;
  trace.query = message;
  trace.image = visual;
  trace.config = config;

  // Query analysis.
  const LookupRecognizer fallback(fixtures.image_table());
  const LandmarkRecognizer* recognizer = adapters.recognizer ? adapters.recognizer : &fallback;
  trace.spec = analyze_query(message, visual, fixtures.place_names(), recognizer);
  const QuerySpec& spec = trace.spec;
  std::optional<std::string> city = spec.destination;
  if (!city && spec.landmark) {
    if (const Poi* p = fixtures.pois().find(*spec.landmark)) city = p->city;
  }
  if (spec.empty()) {
    trace.outcome = Outcome::kClarification;
    trace.notes.push_back("nothing to plan from: name a destination or attach a photo");
    return trace;
  }
  if (!city) {
    trace.outcome = Outcome::kClarification;
    trace.notes.push_back("which city should the trip cover?");
    return trace;
  }
  if (!spec.budget) {
    trace.outcome = Outcome::kClarification;
    trace.notes.push_back("what is the budget?");
    return trace;
  }

  // Reasoning.
  PlanState& st = trace.state;
  st.days = spec.days.value_or(1);
  st.draft.weekday = spec.weekday.value_or(0);
  st.draft.budget = *spec.budget;
  st.draft.group_size = spec.group_size.value_or(1);
  st.draft.accessibility = spec.accessibility;
  const auto picked = shortlist(fixtures, *city, spec.accessibility, spec.landmark, config.shortlist_size);
  if (picked.empty()) {
    trace.outcome = Outcome::kInfeasible;
    trace.notes.push_back("no candidate POIs in " + *city);
    return trace;
  }
  for (const auto& p : picked) st.draft.candidates.push_back(without_live_fields(p));
  st.chain = reason_over(st, trace, fixtures, adapters);
  if (spec.image) st.pending.insert({tools::Tool::kMapLocate, *spec.image, ""});
  for (const auto& p : st.draft.candidates) add_needs_for(st, p, spec.quality_ranking);

  // Tool employment, then result integration.
  run_tools(trace, fixtures, adapters);
  integrate(trace);
  return trace;
}

SessionTrace refine_session(const SessionTrace& trace, const Refinement& refinement,
                            const tools::FixtureStore& fixtures, const Adapters& adapters) {
  if (trace.state.draft.candidates.empty()) throw Error("session has no plan to refine");
  if (refinement.lock && refinement.exclude && *refinement.lock == *refinement.exclude) {
    throw Error("cannot both lock and exclude '" + *refinement.lock + "'");
  }
  SessionTrace next = trace;
  PlanState& st = next.state;
  if (refinement.exclude) {
    if (!fixtures.pois().find(*refinement.exclude)) throw Error("unknown POI '" + *refinement.exclude + "'");
    if (st.draft.locked.contains(*refinement.exclude)) {
      throw Error("cannot both lock and exclude '" + *refinement.exclude + "'");
    }
  }
  if (refinement.lock) {
    if (!fixtures.pois().find(*refinement.lock)) throw Error("unknown POI '" + *refinement.lock + "'");
    if (st.excluded.contains(*refinement.lock)) {
      throw Error("cannot both lock and exclude '" + *refinement.lock + "'");
    }
  }
  if (refinement.day_window) {
    const auto v = validate_window(*refinement.day_window);
    if (!v.ok()) throw Error("day window: " + v.violations.front());
  }

  if (refinement.budget) st.draft.budget = *refinement.budget;
  if (refinement.day_window) st.draft.day_window = *refinement.day_window;
  if (refinement.exclude) st.excluded.insert(*refinement.exclude);
  if (refinement.lock) {
    st.draft.locked.insert(*refinement.lock);
    const bool known = std::any_of(st.draft.candidates.begin(), st.draft.candidates.end(),
                                   [&](const Poi& p) { return p.id == *refinement.lock; });
    if (!known) {
      const Poi added = without_live_fields(fixtures.pois().at(*refinement.lock));
      st.draft.candidates.push_back(added);
      add_needs_for(st, added, next.spec.quality_ranking);
    }
  }
  st.chain = reason_over(st, next, fixtures, adapters);
  next.refinements.push_back(refinement);
  next.notes.clear();
  run_tools(next, fixtures, adapters);
  integrate(next);
  return next;
}

SessionTrace replay(const SessionTrace& trace, const tools::FixtureStore& fixtures,
                    const Adapters& adapters) {
  SessionTrace out = run_session(trace.query, trace.image, trace.config, fixtures, adapters);
  for (const auto& r : trace.refinements) out = refine_session(out, r, fixtures, adapters);
  return out;
}

}  // namespace travelkit::agent
