#pragma once

#include <functional>
#include <string>
#include <vector>

#include "evade/learner/gae.hpp"
#include "evade/learner/ppo.hpp"
#include "evade/rewards.hpp"

namespace evade {

struct EnvStep {
  Observation observation;
  RewardBreakdown reward;
  bool done = false;
};

// Episode source for the trainer; implementations sample their own
// scenarios on reset.
class TrainEnv {
 public:
  virtual ~TrainEnv() = default;
  virtual Observation reset() = 0;
  virtual EnvStep step(const ControlAction& action) = 0;
};

struct EpisodeCurvePoint {
  int episode = 0;
  int steps = 0;
  double accumulated_reward = 0.0;
  RewardBreakdown mean_terms;  // per-step means of the reward terms
};

struct TrainResult {
  PolicyParameters params;
  std::vector<EpisodeCurvePoint> curve;
  bool diverged = false;
  std::string diagnostic;
};

// PPO training until the episode budget is reached. Updates run on every
// full batch of transitions; a trailing partial batch is dropped. The whole
// loop is deterministic for a fixed seed.
TrainResult train(TrainEnv& env, const TrainConfig& config,
                  const PolicyParameters* warm_start = nullptr,
                  const std::function<void(const EpisodeCurvePoint&)>&
                      on_episode = nullptr);

}  // namespace evade
