#pragma once

#include "travelkit/core/error.hpp"
#include "travelkit/core/types.hpp"

namespace travelkit::cot {

inline constexpr double kDefaultLambda = 1.0;

struct LossBreakdown {
  double l_cot = 0.0;
  double l_ans = 0.0;
  double lambda = kDefaultLambda;
  double total = 0.0;
};

// total = lambda * l_cot + l_ans. Negative or non-finite inputs throw.
LossBreakdown combined_loss(double l_cot, double l_ans, double lambda = kDefaultLambda);

// Reasoning loss proxy for a predicted chain: 1 - chain_similarity.
double chain_loss(const CoTChain& gold, const CoTChain& pred);

}  // namespace travelkit::cot
