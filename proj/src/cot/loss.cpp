#include "travelkit/cot/loss.hpp"

#include <cmath>

namespace travelkit::cot {

LossBreakdown combined_loss(double l_cot, double l_ans, double lambda) {
  if (!std::isfinite(l_cot) || l_cot < 0.0) throw Error("reasoning loss must be finite and >= 0");
  if (!std::isfinite(l_ans) || l_ans < 0.0) throw Error("answer loss must be finite and >= 0");
  if (!std::isfinite(lambda) || lambda < 0.0) throw Error("lambda must be finite and >= 0");
  return {l_cot, l_ans, lambda, lambda * l_cot + l_ans};
}

}  // namespace travelkit::cot
