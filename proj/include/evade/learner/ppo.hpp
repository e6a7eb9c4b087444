#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "evade/learner/policy.hpp"

namespace evade {

struct TrainConfig {
  double discount = 0.99;
  double learning_rate = 3e-4;
  int batch_size = 1024;
  int max_episode_steps = 7500;
  double gae_lambda = 0.95;
  double clip_epsilon = 0.2;
  int epochs_per_update = 10;
  double entropy_coeff = 0.0;
  double value_coeff = 0.5;
  double max_grad_norm = 0.5;
  std::uint64_t seed = 0;
  int episodes = 1000;            // training budget
  double control_hz = 200.0;      // simulation/action rate
  double log_std_init = -0.5;
  int hidden_units = 256;
};

std::uint64_t train_config_hash(const TrainConfig& config);

// One update's worth of transitions. Advantages are already normalized.
struct RolloutBatch {
  Eigen::MatrixXd observations;   // N x obs_dim
  Eigen::MatrixXd presquash;      // N x act_dim
  Eigen::VectorXd old_log_probs;  // N
  Eigen::VectorXd advantages;     // N
  Eigen::VectorXd returns;        // N

  Eigen::Index size() const { return observations.rows(); }
};

struct PpoStats {
  double loss = 0.0;
  double actor_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double approx_kl = 0.0;
  double clip_fraction = 0.0;
  double grad_norm = 0.0;  // before clipping, last epoch
  bool aborted = false;
};

struct PpoGradients {
  double loss = 0.0;
  Eigen::VectorXd flat;  // same ordering as PolicyParameters::flatten
  PpoStats stats;
};

// Clipped-surrogate loss plus value MSE; gradients for every parameter.
// Pure function of (params, batch, config); the finite-difference oracle in
// the tests runs against the same loss.
PpoGradients ppo_loss_and_grads(const PolicyParameters& params,
                                const RolloutBatch& batch,
                                const TrainConfig& config);

// Adam state persists across updates.
class PpoTrainer {
 public:
  explicit PpoTrainer(const TrainConfig& config) : config_(config) {}

  // Runs epochs_per_update full-batch gradient steps in place. Returns the
  // last epoch's stats; sets aborted on a non-finite loss, leaving the
  // parameters at their pre-update values.
  PpoStats update(PolicyParameters& params, const RolloutBatch& batch);

 private:
  TrainConfig config_;
  Eigen::VectorXd adam_m_;
  Eigen::VectorXd adam_v_;
  long step_count_ = 0;
};

}  // namespace evade
