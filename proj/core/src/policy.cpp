#include "freight/policy.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <random>

namespace freight {

namespace {

std::vector<std::size_t> with_io(std::size_t in, const std::vector<std::size_t>& hidden,
                                 std::size_t out) {
  std::vector<std::size_t> sizes{in};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(out);
  return sizes;
}

void he_init_hidden(DenseNetwork& net, Rng& rng) {
  const auto& sizes = net.layer_sizes();
  for (std::size_t l = 0; l + 1 < net.num_layers(); ++l) {
    const double stddev = std::sqrt(2.0 / static_cast<double>(sizes[l]));
    for (std::size_t o = 0; o < sizes[l + 1]; ++o) {
      for (std::size_t i = 0; i < sizes[l]; ++i) {
        net.weight(l, o, i) = sample_normal(rng, 0.0, stddev);
      }
      net.bias(l, o) = 0.0;
    }
  }
}

}  // namespace

double softplus(double x) {
  // log(1 + e^x) without overflow
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double inverse_softplus(double y) {
  if (!(y > 0.0)) throw std::invalid_argument("inverse_softplus: argument must be > 0");
  return y > 30.0 ? y + std::log(-std::expm1(-y)) : std::log(std::expm1(y));
}

PolicyModel::PolicyModel(std::vector<std::size_t> hidden_layers, AdamConfig adam,
                         double sigma_floor)
    : net_(with_io(kActorFeatures, hidden_layers, 2)),
      opt_(adam, net_.num_params()),
      sigma_floor_(sigma_floor) {}

GaussianHead PolicyModel::head(const DenseNetwork::Trace& trace) const {
  const auto out = trace.output();
  GaussianHead h;
  h.mu = out[0];
  h.sigma_raw = out[1];
  const double s = softplus(out[1]);
  h.sigma_clamped = !(s > sigma_floor_);
  h.sigma = h.sigma_clamped ? sigma_floor_ : s;
  return h;
}

GaussianHead PolicyModel::evaluate(const FeatureVector& features,
                                   DenseNetwork::Trace& trace) const {
  net_.forward(features.values(), trace);
  return head(trace);
}

GaussianHead PolicyModel::evaluate(const FeatureVector& features) const {
  DenseNetwork::Trace trace;
  return evaluate(features, trace);
}

CriticModel::CriticModel(std::vector<std::size_t> hidden_layers, AdamConfig adam)
    : net_(with_io(kCriticFeatures, hidden_layers, 1)), opt_(adam, net_.num_params()) {}

double CriticModel::q(const FeatureVector& critic_features, DenseNetwork::Trace& trace) const {
  net_.forward(critic_features.values(), trace);
  return trace.output()[0];
}

double CriticModel::q(const FeatureVector& critic_features) const {
  DenseNetwork::Trace trace;
  return q(critic_features, trace);
}

ActionSample sample_action(const PolicyModel& model, const FeatureVector& features, Rng& rng) {
  const GaussianHead h = model.evaluate(features);
  if (!std::isfinite(h.mu) || !std::isfinite(h.sigma)) {
    throw DivergenceError(
        fmt::format("actor output is not finite (mu={}, sigma={}); training diverged", h.mu,
                    h.sigma));
  }
  return {sample_normal(rng, h.mu, h.sigma), h.mu, h.sigma};
}

double gaussian_actor_loss(double price, double mu, double sigma, double signal) {
  if (signal == 0.0) return 0.0;
  const double z = (price - mu) / sigma;
  const double neg_log_pdf = std::log(sigma) + 0.5 * std::log(2.0 * std::numbers::pi) + 0.5 * z * z;
  return neg_log_pdf * signal;
}

GaussianLossGradient gaussian_actor_loss_gradient(double price, double mu, double sigma,
                                                  double signal) {
  const double diff = price - mu;
  const double s2 = sigma * sigma;
  return {-diff / s2 * signal, (1.0 / sigma - diff * diff / (s2 * sigma)) * signal};
}

double critic_loss(double q, double observed) {
  const double e = observed - q;
  return e * e;
}

double critic_loss_gradient(double q, double observed) { return -2.0 * (observed - q); }

Algorithm parse_algorithm(std::string_view name) {
  if (name == "pg") return Algorithm::kPolicyGradient;
  if (name == "pg-baseline") return Algorithm::kPolicyGradientBaseline;
  if (name == "q-ac") return Algorithm::kQValue;
  if (name == "td1") return Algorithm::kTd1;
  if (name == "advantage") return Algorithm::kAdvantage;
  throw std::invalid_argument(fmt::format(
      "unknown algorithm '{}' (expected pg, pg-baseline, q-ac, td1, advantage)", name));
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kPolicyGradient: return "pg";
    case Algorithm::kPolicyGradientBaseline: return "pg-baseline";
    case Algorithm::kQValue: return "q-ac";
    case Algorithm::kTd1: return "td1";
    case Algorithm::kAdvantage: return "advantage";
  }
  return "?";
}

bool uses_critic(Algorithm algorithm) {
  return algorithm == Algorithm::kQValue || algorithm == Algorithm::kTd1 ||
         algorithm == Algorithm::kAdvantage;
}

double compute_signal(Algorithm algorithm, double vhat, double baseline, double q_sampled,
                      double q_mean) {
  switch (algorithm) {
    case Algorithm::kPolicyGradient: return vhat;
    case Algorithm::kPolicyGradientBaseline: return vhat - baseline;
    case Algorithm::kQValue: return q_sampled;
    case Algorithm::kTd1: return vhat - q_sampled;
    case Algorithm::kAdvantage: return q_sampled - q_mean;
  }
  throw std::invalid_argument("compute_signal: unknown algorithm");
}

PolicyModel init_policy(const std::vector<std::size_t>& hidden_layers, double bias_init,
                        double sigma_init, AdamConfig adam, Rng& rng, double sigma_floor) {
  if (!(sigma_init > 0.0)) throw std::invalid_argument("init_policy: sigma_init must be > 0");
  PolicyModel model(hidden_layers, adam, sigma_floor);
  DenseNetwork& net = model.network();
  he_init_hidden(net, rng);
  const std::size_t last = net.num_layers() - 1;
  net.bias(last, 0) = bias_init;
  net.bias(last, 1) = inverse_softplus(sigma_init);
  return model;
}

CriticModel init_critic(const std::vector<std::size_t>& hidden_layers, AdamConfig adam, Rng& rng) {
  CriticModel model(hidden_layers, adam);
  he_init_hidden(model.network(), rng);
  return model;
}

}  // namespace freight
