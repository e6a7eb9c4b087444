#pragma once

#include <vector>

namespace evade {

struct GaeResult {
  std::vector<double> advantages;  // raw, not normalized
  std::vector<double> returns;     // advantages + values
};

// Generalized advantage estimation over one trajectory segment. When the
// segment does not end in a terminal state, bootstrap_value stands in for
// the value of the state after the last step. Throws on length mismatch.
GaeResult compute_gae(const std::vector<double>& rewards,
                      const std::vector<double>& values,
                      double bootstrap_value, bool terminal, double gamma,
                      double lambda);

}  // namespace evade
