#pragma once

#include <string>
#include <vector>

#include "travelkit/core/error.hpp"
#include "travelkit/cot/chain.hpp"

namespace travelkit::cot {

class Reasoner {
 public:
  virtual ~Reasoner() = default;
  virtual CoTChain reason(const QueryContext& ctx) const = 0;
};

// Deterministic rule-based reasoner:
//   spatial   - nearest-neighbour tour from the first candidate, one step per hop
//   temporal  - per-POI opening window within the day window, or a conflict
//   practical - running cost (price x group size) and accessibility checks
// Throws Error("empty candidate set") when ctx has no candidates.
class ReferenceReasoner : public Reasoner {
 public:
  CoTChain reason(const QueryContext& ctx) const override;
};

CoTChain reference_reason(const QueryContext& ctx);

// Candidate ids in greedy nearest-neighbour order starting at candidates[0].
// Ties on distance go to the smaller id.
std::vector<std::string> nearest_neighbor_order(const std::vector<Poi>& candidates);

// POI ids the chain marks as unschedulable (temporal conflict) or as failing
// a practical check.
std::vector<std::string> infeasible_in_chain(const CoTChain& chain);

}  // namespace travelkit::cot
