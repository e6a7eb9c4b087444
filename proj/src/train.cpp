#include "evade/learner/train.hpp"

#include <cmath>

namespace evade {

namespace {

struct Buffer {
  std::vector<Observation> observations;
  std::vector<Eigen::Vector4d> presquash;
  std::vector<double> log_probs;
  std::vector<double> rewards;
  std::vector<double> values;
  std::vector<bool> dones;

  std::size_t size() const { return rewards.size(); }
  void clear() {
    observations.clear();
    presquash.clear();
    log_probs.clear();
    rewards.clear();
    values.clear();
    dones.clear();
  }
};

// GAE per episode segment, advantage normalization across the whole batch.
RolloutBatch assemble_batch(const Buffer& buf, double bootstrap_value,
                            const TrainConfig& config) {
  const std::size_t n = buf.size();
  std::vector<double> advantages(n);
  std::vector<double> returns(n);

  std::size_t start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool segment_end = buf.dones[i] || i + 1 == n;
    if (!segment_end) continue;
    std::vector<double> seg_rewards(buf.rewards.begin() + start,
                                    buf.rewards.begin() + i + 1);
    std::vector<double> seg_values(buf.values.begin() + start,
                                   buf.values.begin() + i + 1);
    GaeResult gae = compute_gae(seg_rewards, seg_values, bootstrap_value,
                                buf.dones[i], config.discount,
                                config.gae_lambda);
    for (std::size_t k = 0; k < gae.advantages.size(); ++k) {
      advantages[start + k] = gae.advantages[k];
      returns[start + k] = gae.returns[k];
    }
    start = i + 1;
  }

  double mean = 0.0;
  for (double a : advantages) mean += a;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double a : advantages) var += (a - mean) * (a - mean);
  double stddev = std::sqrt(var / static_cast<double>(n));

  RolloutBatch batch;
  batch.observations.resize(n, 12);
  batch.presquash.resize(n, 4);
  batch.old_log_probs.resize(n);
  batch.advantages.resize(n);
  batch.returns.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < 12; ++j)
      batch.observations(i, j) = buf.observations[i].values[j];
    batch.presquash.row(i) = buf.presquash[i].transpose();
    batch.old_log_probs(i) = buf.log_probs[i];
    batch.advantages(i) = (advantages[i] - mean) / (stddev + 1e-8);
    batch.returns(i) = returns[i];
  }
  return batch;
}

}  // namespace

TrainResult train(TrainEnv& env, const TrainConfig& config,
                  const PolicyParameters* warm_start,
                  const std::function<void(const EpisodeCurvePoint&)>&
                      on_episode) {
  TrainResult result;
  result.params = warm_start != nullptr
                      ? *warm_start
                      : PolicyParameters::init(config.seed, 12, 4,
                                               config.hidden_units,
                                               config.log_std_init);
  Rng action_rng(derive_seed(config.seed, 0x61637431));
  PpoTrainer trainer(config);
  Buffer buffer;

  Observation obs = env.reset();
  int episodes_done = 0;
  int episode_steps = 0;
  double episode_reward = 0.0;
  RewardBreakdown episode_terms;

  auto accumulate_terms = [](RewardBreakdown& acc, const RewardBreakdown& r) {
    auto a = acc.terms();
    auto b = r.terms();
    acc.roll = a[0] + b[0];
    acc.pitch = a[1] + b[1];
    acc.azimuth = a[2] + b[2];
    acc.velocity = a[3] + b[3];
    acc.los = a[4] + b[4];
    acc.constraint_roll = a[5] + b[5];
    acc.constraint_pitch = a[6] + b[6];
    acc.constraint_azimuth = a[7] + b[7];
    acc.constraint_velocity = a[8] + b[8];
    acc.distance_terminal = a[9] + b[9];
    acc.overload = a[10] + b[10];
  };

  while (episodes_done < config.episodes) {
    ActionSample sample = sample_action(result.params, obs, action_rng);
    EnvStep step = env.step(sample.action);
    if (!std::isfinite(step.reward.total)) {
      result.diverged = true;
      result.diagnostic = "non-finite reward at episode " +
                          std::to_string(episodes_done);
      return result;
    }

    buffer.observations.push_back(obs);
    buffer.presquash.push_back(sample.presquash);
    buffer.log_probs.push_back(sample.log_prob);
    buffer.rewards.push_back(step.reward.total);
    buffer.values.push_back(sample.value);
    buffer.dones.push_back(step.done);

    episode_steps += 1;
    episode_reward += step.reward.total;
    accumulate_terms(episode_terms, step.reward);

    if (step.done) {
      EpisodeCurvePoint point;
      point.episode = episodes_done;
      point.steps = episode_steps;
      point.accumulated_reward = episode_reward;
      double inv = 1.0 / static_cast<double>(episode_steps);
      point.mean_terms = episode_terms;
      point.mean_terms.roll *= inv;
      point.mean_terms.pitch *= inv;
      point.mean_terms.azimuth *= inv;
      point.mean_terms.velocity *= inv;
      point.mean_terms.los *= inv;
      point.mean_terms.constraint_roll *= inv;
      point.mean_terms.constraint_pitch *= inv;
      point.mean_terms.constraint_azimuth *= inv;
      point.mean_terms.constraint_velocity *= inv;
      point.mean_terms.distance_terminal *= inv;
      point.mean_terms.overload *= inv;
      point.mean_terms.total = episode_reward * inv;
      result.curve.push_back(point);
      if (on_episode) on_episode(point);

      episodes_done += 1;
      episode_steps = 0;
      episode_reward = 0.0;
      episode_terms = RewardBreakdown{};
      if (episodes_done >= config.episodes) break;
      obs = env.reset();
    } else {
      obs = step.observation;
    }

    if (buffer.size() == static_cast<std::size_t>(config.batch_size)) {
      double bootstrap = 0.0;
      if (!buffer.dones.back()) {
        Eigen::VectorXd x = observation_vector(obs);
        bootstrap = result.params.critic.forward(x)(0);
      }
      RolloutBatch batch = assemble_batch(buffer, bootstrap, config);
      PpoStats stats = trainer.update(result.params, batch);
      if (stats.aborted) {
        result.diverged = true;
        result.diagnostic = "non-finite loss at episode " +
                            std::to_string(episodes_done);
        return result;
      }
      buffer.clear();
    }
  }
  return result;
}

}  // namespace evade
