#pragma once

#include <span>
#include <string>
#include <vector>

#include "travelkit/core/types.hpp"

namespace travelkit::cot {

// Token multiset of a step: normalized text tokens plus reference and
// payload tokens.
std::vector<std::string> step_tokens(const ReasoningStep& step);

// Multiset token F1; 1.0 for two empty steps.
double step_f1(const ReasoningStep& a, const ReasoningStep& b);

// Greedy best-match alignment of gold steps to predicted steps. Each matched
// pair contributes F1 / (1 + |i - j|); the sum is divided by the longer
// length. Averaged over both directions so the result is symmetric.
double component_similarity(std::span<const ReasoningStep> gold,
                            std::span<const ReasoningStep> pred);

// Mean component similarity over spatial, temporal and practical parts.
double chain_similarity(const CoTChain& gold, const CoTChain& pred);

}  // namespace travelkit::cot
