#include "evade/learner/gae.hpp"

#include <stdexcept>

namespace evade {

GaeResult compute_gae(const std::vector<double>& rewards,
                      const std::vector<double>& values,
                      double bootstrap_value, bool terminal, double gamma,
                      double lambda) {
  if (rewards.size() != values.size()) {
    throw std::invalid_argument("compute_gae: length mismatch");
  }
  const std::size_t n = rewards.size();
  GaeResult out;
  out.advantages.resize(n);
  out.returns.resize(n);
  double next_value = terminal ? 0.0 : bootstrap_value;
  double gae = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    double delta = rewards[i] + gamma * next_value - values[i];
    gae = delta + gamma * lambda * gae;
    out.advantages[i] = gae;
    out.returns[i] = gae + values[i];
    next_value = values[i];
  }
  return out;
}

}  // namespace evade
