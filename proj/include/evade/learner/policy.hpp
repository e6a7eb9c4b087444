#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "evade/aircraft.hpp"
#include "evade/learner/observation.hpp"
#include "evade/rng.hpp"

namespace evade {

// Dense feed-forward net: tanh on hidden layers, linear output. The actor's
// output squash is applied by the callers that need it, so the pre-squash
// activation stays available for sampling.
struct Mlp {
  std::vector<Eigen::MatrixXd> weights;  // per layer, rows = outputs
  std::vector<Eigen::VectorXd> biases;

  Eigen::VectorXd forward(const Eigen::VectorXd& x) const;
  // Rows are samples.
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& x) const;
  std::vector<int> layer_sizes() const;
  std::size_t parameter_count() const;

  static Mlp init(const std::vector<int>& sizes, Rng& rng,
                  double output_gain = 1.0);
};

// Actor, critic, and the state-independent action log-stds.
struct PolicyParameters {
  Mlp actor;   // obs -> pre-squash action means
  Mlp critic;  // obs -> value
  Eigen::VectorXd log_std;

  static PolicyParameters init(std::uint64_t seed, int obs_dim = 12,
                               int act_dim = 4, int hidden = 256,
                               double log_std_init = -0.5);

  std::size_t parameter_count() const;
  Eigen::VectorXd flatten() const;
  void unflatten(const Eigen::VectorXd& flat);
};

struct PolicyOutput {
  ControlAction mean;   // deterministic action, throttle remapped to [0, 1]
  double value = 0.0;
};

struct ActionSample {
  ControlAction action;
  Eigen::Vector4d presquash;  // Gaussian draw before the tanh squash
  double log_prob = 0.0;
  double value = 0.0;
};

Eigen::VectorXd observation_vector(const Observation& obs);

// Deterministic forward pass: squashed actor means plus critic value.
PolicyOutput policy_forward(const PolicyParameters& params,
                            const Observation& obs);

// Tanh-squashed Gaussian around the pre-squash mean with per-dimension
// std = exp(log_std); log_prob carries the squash Jacobian correction.
ActionSample sample_action(const PolicyParameters& params,
                           const Observation& obs, Rng& rng);

ControlAction action_from_squashed(const Eigen::Vector4d& squashed);

// Log-probability of a stored pre-squash draw under the given parameters.
double presquash_log_prob(const Eigen::VectorXd& mean,
                          const Eigen::VectorXd& log_std,
                          const Eigen::VectorXd& presquash);

// Squash-Jacobian part of the log-probability. Depends only on the stored
// draw, so it cancels in likelihood ratios but must be applied consistently.
double squash_log_jacobian(const Eigen::VectorXd& presquash);

// Checkpoint files are JSON with full-precision decimal floats; a
// save/load/save round trip is byte-identical.
void save_checkpoint(const PolicyParameters& params, const std::string& path,
                     std::uint64_t seed, std::uint64_t config_hash);
PolicyParameters load_checkpoint(const std::string& path,
                                 std::uint64_t* seed = nullptr,
                                 std::uint64_t* config_hash = nullptr);

}  // namespace evade
