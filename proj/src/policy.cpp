#include "evade/learner/policy.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace evade {

namespace {

constexpr double kHalfLog2Pi = 0.9189385332046727;  // 0.5 * ln(2*pi)

// log(1 - tanh(u)^2) in a form that stays finite for large |u|.
double log_one_minus_tanh_sq(double u) {
  double a = 2.0 * u;
  double softplus = std::log1p(std::exp(-std::abs(a))) + std::max(a, 0.0);
  return std::log(4.0) + a - 2.0 * softplus;
}

}  // namespace

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& x) const {
  Eigen::VectorXd h = x;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    h = (weights[l] * h + biases[l]).eval();
    if (l + 1 < weights.size()) h = h.array().tanh().matrix();
  }
  return h;
}

Eigen::MatrixXd Mlp::forward_batch(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd h = x;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    h = ((h * weights[l].transpose()).rowwise() + biases[l].transpose()).eval();
    if (l + 1 < weights.size()) h = h.array().tanh().matrix();
  }
  return h;
}

std::vector<int> Mlp::layer_sizes() const {
  std::vector<int> sizes;
  if (weights.empty()) return sizes;
  sizes.push_back(static_cast<int>(weights.front().cols()));
  for (const auto& w : weights) sizes.push_back(static_cast<int>(w.rows()));
  return sizes;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    n += static_cast<std::size_t>(weights[l].size()) +
         static_cast<std::size_t>(biases[l].size());
  }
  return n;
}

Mlp Mlp::init(const std::vector<int>& sizes, Rng& rng, double output_gain) {
  Mlp net;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    int in = sizes[l];
    int out = sizes[l + 1];
    double gain = (l + 2 == sizes.size()) ? output_gain : 1.0;
    double std_dev = gain * std::sqrt(2.0 / static_cast<double>(in + out));
    Eigen::MatrixXd w(out, in);
    for (int r = 0; r < out; ++r)
      for (int c = 0; c < in; ++c) w(r, c) = std_dev * rng.normal();
    net.weights.push_back(std::move(w));
    net.biases.push_back(Eigen::VectorXd::Zero(out));
  }
  return net;
}

PolicyParameters PolicyParameters::init(std::uint64_t seed, int obs_dim,
                                        int act_dim, int hidden,
                                        double log_std_init) {
  Rng rng(seed);
  PolicyParameters p;
  p.actor = Mlp::init({obs_dim, hidden, hidden, act_dim}, rng, 0.01);
  p.critic = Mlp::init({obs_dim, hidden, hidden, 1}, rng);
  p.log_std = Eigen::VectorXd::Constant(act_dim, log_std_init);
  return p;
}

std::size_t PolicyParameters::parameter_count() const {
  return actor.parameter_count() + critic.parameter_count() +
         static_cast<std::size_t>(log_std.size());
}

Eigen::VectorXd PolicyParameters::flatten() const {
  Eigen::VectorXd flat(parameter_count());
  Eigen::Index at = 0;
  auto put = [&](const Mlp& net) {
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
      const auto& w = net.weights[l];
      for (Eigen::Index r = 0; r < w.rows(); ++r)
        for (Eigen::Index c = 0; c < w.cols(); ++c) flat(at++) = w(r, c);
      const auto& b = net.biases[l];
      for (Eigen::Index i = 0; i < b.size(); ++i) flat(at++) = b(i);
    }
  };
  put(actor);
  put(critic);
  for (Eigen::Index i = 0; i < log_std.size(); ++i) flat(at++) = log_std(i);
  return flat;
}

void PolicyParameters::unflatten(const Eigen::VectorXd& flat) {
  if (static_cast<std::size_t>(flat.size()) != parameter_count()) {
    throw std::invalid_argument("unflatten: size mismatch");
  }
  Eigen::Index at = 0;
  auto take = [&](Mlp& net) {
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
      auto& w = net.weights[l];
      for (Eigen::Index r = 0; r < w.rows(); ++r)
        for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = flat(at++);
      auto& b = net.biases[l];
      for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = flat(at++);
    }
  };
  take(actor);
  take(critic);
  for (Eigen::Index i = 0; i < log_std.size(); ++i) log_std(i) = flat(at++);
}

Eigen::VectorXd observation_vector(const Observation& obs) {
  Eigen::VectorXd x(12);
  for (int i = 0; i < 12; ++i) x(i) = obs.values[i];
  return x;
}

ControlAction action_from_squashed(const Eigen::Vector4d& squashed) {
  ControlAction a;
  a.elevator = squashed(0);
  a.aileron = squashed(1);
  a.rudder = squashed(2);
  a.throttle = (squashed(3) + 1.0) / 2.0;
  return a.clamped();
}

PolicyOutput policy_forward(const PolicyParameters& params,
                            const Observation& obs) {
  Eigen::VectorXd x = observation_vector(obs);
  Eigen::VectorXd z = params.actor.forward(x);
  Eigen::Vector4d squashed = z.array().tanh().matrix().head<4>();
  PolicyOutput out;
  out.mean = action_from_squashed(squashed);
  out.value = params.critic.forward(x)(0);
  return out;
}

double squash_log_jacobian(const Eigen::VectorXd& presquash) {
  double jac = 0.0;
  for (Eigen::Index i = 0; i < presquash.size(); ++i) {
    jac -= log_one_minus_tanh_sq(presquash(i));
  }
  // throttle squash is (tanh(u)+1)/2: the extra affine Jacobian
  return jac + std::log(2.0);
}

double presquash_log_prob(const Eigen::VectorXd& mean,
                          const Eigen::VectorXd& log_std,
                          const Eigen::VectorXd& presquash) {
  double lp = 0.0;
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    double sigma = std::exp(log_std(i));
    double zscore = (presquash(i) - mean(i)) / sigma;
    lp += -0.5 * zscore * zscore - log_std(i) - kHalfLog2Pi;
  }
  return lp + squash_log_jacobian(presquash);
}

ActionSample sample_action(const PolicyParameters& params,
                           const Observation& obs, Rng& rng) {
  Eigen::VectorXd x = observation_vector(obs);
  Eigen::VectorXd z = params.actor.forward(x);
  Eigen::VectorXd u(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    u(i) = z(i) + std::exp(params.log_std(i)) * rng.normal();
  }
  ActionSample sample;
  sample.presquash = u.head<4>();
  sample.action = action_from_squashed(u.array().tanh().matrix().head<4>());
  sample.log_prob = presquash_log_prob(z, params.log_std, u);
  sample.value = params.critic.forward(x)(0);
  return sample;
}

namespace {

nlohmann::json mlp_to_json(const Mlp& net) {
  nlohmann::json j;
  j["sizes"] = net.layer_sizes();
  nlohmann::json layers = nlohmann::json::array();
  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    const auto& w = net.weights[l];
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(w.size()));
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) flat.push_back(w(r, c));
    std::vector<double> bias(net.biases[l].data(),
                             net.biases[l].data() + net.biases[l].size());
    layers.push_back({{"w", flat}, {"b", bias}});
  }
  j["layers"] = layers;
  return j;
}

Mlp mlp_from_json(const nlohmann::json& j) {
  std::vector<int> sizes = j.at("sizes").get<std::vector<int>>();
  Mlp net;
  const auto& layers = j.at("layers");
  if (layers.size() + 1 != sizes.size()) {
    throw std::runtime_error("checkpoint: layer count mismatch");
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    int in = sizes[l];
    int out = sizes[l + 1];
    auto flat = layers[l].at("w").get<std::vector<double>>();
    auto bias = layers[l].at("b").get<std::vector<double>>();
    if (static_cast<int>(flat.size()) != in * out ||
        static_cast<int>(bias.size()) != out) {
      throw std::runtime_error("checkpoint: weight shape mismatch");
    }
    Eigen::MatrixXd w(out, in);
    std::size_t at = 0;
    for (int r = 0; r < out; ++r)
      for (int c = 0; c < in; ++c) w(r, c) = flat[at++];
    net.weights.push_back(std::move(w));
    net.biases.push_back(
        Eigen::Map<const Eigen::VectorXd>(bias.data(), out));
  }
  return net;
}

}  // namespace

void save_checkpoint(const PolicyParameters& params, const std::string& path,
                     std::uint64_t seed, std::uint64_t config_hash) {
  nlohmann::json j;
  j["format"] = "evade-checkpoint-v1";
  j["seed"] = seed;
  j["config_hash"] = config_hash;
  j["actor"] = mlp_to_json(params.actor);
  j["critic"] = mlp_to_json(params.critic);
  j["log_std"] = std::vector<double>(params.log_std.data(),
                                     params.log_std.data() +
                                         params.log_std.size());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
  out << j.dump(2) << "\n";
}

PolicyParameters load_checkpoint(const std::string& path, std::uint64_t* seed,
                                 std::uint64_t* config_hash) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.at("format").get<std::string>() != "evade-checkpoint-v1") {
    throw std::runtime_error("unrecognized checkpoint format");
  }
  PolicyParameters p;
  p.actor = mlp_from_json(j.at("actor"));
  p.critic = mlp_from_json(j.at("critic"));
  auto ls = j.at("log_std").get<std::vector<double>>();
  p.log_std = Eigen::Map<const Eigen::VectorXd>(ls.data(),
                                                static_cast<Eigen::Index>(ls.size()));
  if (seed != nullptr) *seed = j.at("seed").get<std::uint64_t>();
  if (config_hash != nullptr)
    *config_hash = j.at("config_hash").get<std::uint64_t>();
  return p;
}

}  // namespace evade
