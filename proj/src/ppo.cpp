#include "evade/learner/ppo.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace evade {

namespace {

constexpr double kHalfLog2Pi = 0.9189385332046727;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct ForwardCache {
  std::vector<Eigen::MatrixXd> activations;  // activations[0] = input
  Eigen::MatrixXd output;
};

ForwardCache forward_cached(const Mlp& net, const Eigen::MatrixXd& x) {
  ForwardCache cache;
  cache.activations.push_back(x);
  Eigen::MatrixXd h = x;
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    h = ((h * net.weights[l].transpose()).rowwise() +
         net.biases[l].transpose()).eval();
    if (l + 1 < net.weights.size()) {
      h = h.array().tanh().matrix();
      cache.activations.push_back(h);
    }
  }
  cache.output = h;
  return cache;
}

struct MlpGrads {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

// output_grad is dL/d(linear output), N x out.
MlpGrads backward(const Mlp& net, const ForwardCache& cache,
                  const Eigen::MatrixXd& output_grad) {
  MlpGrads grads;
  grads.weights.resize(net.weights.size());
  grads.biases.resize(net.biases.size());
  Eigen::MatrixXd g = output_grad;
  for (std::size_t l = net.weights.size(); l-- > 0;) {
    grads.weights[l] = g.transpose() * cache.activations[l];
    grads.biases[l] = g.colwise().sum().transpose();
    if (l > 0) {
      const Eigen::MatrixXd& act = cache.activations[l];
      g = ((g * net.weights[l]).array() * (1.0 - act.array().square()))
              .matrix();
    }
  }
  return grads;
}

void append_grads(const MlpGrads& grads, Eigen::VectorXd& flat,
                  Eigen::Index& at) {
  for (std::size_t l = 0; l < grads.weights.size(); ++l) {
    const auto& w = grads.weights[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) flat(at++) = w(r, c);
    const auto& b = grads.biases[l];
    for (Eigen::Index i = 0; i < b.size(); ++i) flat(at++) = b(i);
  }
}

}  // namespace

std::uint64_t train_config_hash(const TrainConfig& c) {
  std::ostringstream os;
  os << c.discount << '|' << c.learning_rate << '|' << c.batch_size << '|'
     << c.max_episode_steps << '|' << c.gae_lambda << '|' << c.clip_epsilon
     << '|' << c.epochs_per_update << '|' << c.entropy_coeff << '|'
     << c.value_coeff << '|' << c.max_grad_norm << '|' << c.seed << '|'
     << c.episodes << '|' << c.control_hz << '|' << c.log_std_init << '|'
     << c.hidden_units;
  return fnv1a(os.str());
}

PpoGradients ppo_loss_and_grads(const PolicyParameters& params,
                                const RolloutBatch& batch,
                                const TrainConfig& config) {
  const Eigen::Index n = batch.size();
  const Eigen::Index act_dim = batch.presquash.cols();
  const double inv_n = 1.0 / static_cast<double>(n);

  ForwardCache actor_cache = forward_cached(params.actor, batch.observations);
  ForwardCache critic_cache = forward_cached(params.critic, batch.observations);
  const Eigen::MatrixXd& mean = actor_cache.output;  // pre-squash
  Eigen::VectorXd values = critic_cache.output.col(0);

  Eigen::VectorXd sigma = params.log_std.array().exp();
  Eigen::VectorXd inv_sigma_sq =
      (sigma.array() * sigma.array()).inverse().matrix();

  // Log-probs of the stored pre-squash draws under the current parameters.
  // The tanh-Jacobian part depends only on the stored draws and carries no
  // gradient, but it is present in the stored old log-probs and must appear
  // here too for the ratios to come out right.
  Eigen::MatrixXd diff = batch.presquash - mean;  // N x act
  Eigen::VectorXd log_probs =
      (-0.5 * (diff.array().square().rowwise() *
               inv_sigma_sq.transpose().array()))
          .rowwise()
          .sum();
  log_probs.array() -=
      params.log_std.sum() + kHalfLog2Pi * static_cast<double>(act_dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    log_probs(i) += squash_log_jacobian(batch.presquash.row(i).transpose());
  }

  Eigen::VectorXd log_ratio = log_probs - batch.old_log_probs;
  Eigen::VectorXd ratio = log_ratio.array().exp();

  // Clipped surrogate; gradient flows through the unclipped branch only when
  // it is the active one.
  double actor_loss = 0.0;
  double clip_count = 0.0;
  Eigen::VectorXd dl_dlogprob = Eigen::VectorXd::Zero(n);
  const double eps = config.clip_epsilon;
  for (Eigen::Index i = 0; i < n; ++i) {
    double a = batch.advantages(i);
    double r = ratio(i);
    double unclipped = r * a;
    double clipped = std::clamp(r, 1.0 - eps, 1.0 + eps) * a;
    actor_loss += -std::min(unclipped, clipped) * inv_n;
    if (unclipped <= clipped) {
      dl_dlogprob(i) = -a * r * inv_n;
    }
    if (std::abs(r - 1.0) > eps) clip_count += 1.0;
  }

  Eigen::VectorXd value_error = values - batch.returns;
  double value_loss = value_error.squaredNorm() * inv_n;

  // Pre-squash Gaussian entropy; only the log-std carries its gradient.
  double entropy = params.log_std.sum() +
                   0.5 * static_cast<double>(act_dim) *
                       (1.0 + 2.0 * kHalfLog2Pi);

  double loss = actor_loss + config.value_coeff * value_loss -
                config.entropy_coeff * entropy;

  // Backward.
  Eigen::MatrixXd dmean =
      (diff.array().rowwise() * inv_sigma_sq.transpose().array()).colwise() *
      dl_dlogprob.array();
  MlpGrads actor_grads = backward(params.actor, actor_cache, dmean);

  Eigen::MatrixXd dvalue =
      (2.0 * config.value_coeff * inv_n) * value_error;
  MlpGrads critic_grads =
      backward(params.critic, critic_cache, dvalue);

  Eigen::VectorXd dlogstd = Eigen::VectorXd::Zero(act_dim);
  for (Eigen::Index j = 0; j < act_dim; ++j) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double zsq = diff(i, j) * diff(i, j) * inv_sigma_sq(j);
      acc += dl_dlogprob(i) * (zsq - 1.0);
    }
    dlogstd(j) = acc - config.entropy_coeff;
  }

  PpoGradients out;
  out.loss = loss;
  out.flat.resize(params.parameter_count());
  Eigen::Index at = 0;
  append_grads(actor_grads, out.flat, at);
  append_grads(critic_grads, out.flat, at);
  for (Eigen::Index j = 0; j < act_dim; ++j) out.flat(at++) = dlogstd(j);

  out.stats.loss = loss;
  out.stats.actor_loss = actor_loss;
  out.stats.value_loss = value_loss;
  out.stats.entropy = entropy;
  out.stats.approx_kl = ((ratio.array() - 1.0) - log_ratio.array()).mean();
  out.stats.clip_fraction = clip_count * inv_n;
  return out;
}

PpoStats PpoTrainer::update(PolicyParameters& params,
                            const RolloutBatch& batch) {
  const Eigen::Index n_params =
      static_cast<Eigen::Index>(params.parameter_count());
  if (adam_m_.size() != n_params) {
    adam_m_ = Eigen::VectorXd::Zero(n_params);
    adam_v_ = Eigen::VectorXd::Zero(n_params);
    step_count_ = 0;
  }

  constexpr double beta1 = 0.9;
  constexpr double beta2 = 0.999;
  constexpr double adam_eps = 1e-8;

  Eigen::VectorXd theta = params.flatten();
  Eigen::VectorXd theta_backup = theta;
  PpoStats stats;
  for (int epoch = 0; epoch < config_.epochs_per_update; ++epoch) {
    PpoGradients g = ppo_loss_and_grads(params, batch, config_);
    if (!std::isfinite(g.loss)) {
      params.unflatten(theta_backup);
      stats.aborted = true;
      return stats;
    }
    stats = g.stats;
    double norm = g.flat.norm();
    stats.grad_norm = norm;
    if (norm > config_.max_grad_norm && norm > 0.0) {
      g.flat *= config_.max_grad_norm / norm;
    }
    ++step_count_;
    adam_m_ = beta1 * adam_m_ + (1.0 - beta1) * g.flat;
    adam_v_ =
        (beta2 * adam_v_.array() + (1.0 - beta2) * g.flat.array().square())
            .matrix();
    double bc1 = 1.0 - std::pow(beta1, static_cast<double>(step_count_));
    double bc2 = 1.0 - std::pow(beta2, static_cast<double>(step_count_));
    theta.array() -= config_.learning_rate *
                     (adam_m_.array() / bc1) /
                     ((adam_v_.array() / bc2).sqrt() + adam_eps);
    params.unflatten(theta);
  }
  return stats;
}

}  // namespace evade
