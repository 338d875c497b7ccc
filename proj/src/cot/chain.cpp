#include "travelkit/cot/chain.hpp"

#include <cmath>

#include "travelkit/core/geo.hpp"

namespace travelkit::cot {

const Poi* QueryContext::find(std::string_view id) const {
  for (const auto& p : candidates) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

std::optional<TimeWindow> visit_window(const Poi& poi, const ConstraintSet& constraints) {
  for (const auto& w : poi.windows_on(constraints.weekday)) {
    auto clipped = window_overlap(w, constraints.day_window);
    if (clipped && clipped->length() >= poi.visit_duration) return clipped;
  }
  return std::nullopt;
}

namespace {

void check_refs(const std::vector<ReasoningStep>& steps, const QueryContext& ctx,
                const char* part, Verdict& v) {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    for (const auto& ref : steps[i].refs) {
      if (!ctx.find(ref)) {
        v.add(std::string(part) + "[" + std::to_string(i) + "]: unresolved reference '" + ref + "'");
      }
    }
  }
}

}  // namespace

Verdict validate_chain(const CoTChain& chain, const QueryContext& ctx) {
  Verdict v;
  if (chain.spatial.empty()) v.add("missing spatial steps");
  if (chain.temporal.empty()) v.add("missing temporal steps");
  if (chain.practical.empty()) v.add("missing practical steps");
  check_refs(chain.spatial, ctx, "spatial", v);
  check_refs(chain.temporal, ctx, "temporal", v);
  check_refs(chain.practical, ctx, "practical", v);

  for (std::size_t i = 0; i < chain.spatial.size(); ++i) {
    const auto& step = chain.spatial[i];
    const auto* claim = std::get_if<DistanceClaim>(&step.payload);
    if (!claim) continue;
    const std::string where = "spatial[" + std::to_string(i) + "]: ";
    if (step.refs.size() == 2) {
      const Poi* a = ctx.find(step.refs[0]);
      const Poi* b = ctx.find(step.refs[1]);
      if (a && b &&
          std::fabs(great_circle_meters(a->location, b->location) - claim->meters) >
              kDistanceToleranceMeters) {
        v.add(where + "distance mismatch");
      }
    } else if (step.refs.size() == 1 && claim->meters != 0.0) {
      v.add(where + "distance claimed for a single location");
    }
  }

  for (std::size_t i = 0; i < chain.temporal.size(); ++i) {
    const auto& step = chain.temporal[i];
    const auto* claim = std::get_if<WindowClaim>(&step.payload);
    if (!claim || step.refs.empty()) continue;
    const Poi* poi = ctx.find(step.refs.front());
    if (!poi) continue;
    const std::string where = "temporal[" + std::to_string(i) + "]: ";
    if (claim->window) {
      const auto& w = *claim->window;
      bool inside = false;
      for (const auto& open : poi->windows_on(ctx.constraints.weekday)) {
        auto clipped = window_overlap(open, ctx.constraints.day_window);
        inside |= clipped && clipped->contains(w);
      }
      if (w.start > w.end || !inside) v.add(where + "window inconsistent with hours of " + poi->id);
    } else if (visit_window(*poi, ctx.constraints)) {
      v.add(where + "conflict claimed but " + poi->id + " can be visited");
    }
  }

  for (std::size_t i = 0; i < chain.practical.size(); ++i) {
    const auto* claim = std::get_if<SumClaim>(&chain.practical[i].payload);
    if (!claim) continue;
    std::int64_t sum = 0;
    for (auto t : claim->terms) sum += t;
    if (sum != claim->total) {
      v.add("practical[" + std::to_string(i) + "]: arithmetic mismatch (stated " +
            std::to_string(claim->total) + ", terms sum to " + std::to_string(sum) + ")");
    }
  }
  return v;
}

}  // namespace travelkit::cot
