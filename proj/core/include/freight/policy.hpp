#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "freight/adam.hpp"
#include "freight/features.hpp"
#include "freight/network.hpp"
#include "freight/rng.hpp"

namespace freight {

/// Raised when a network produces a non-finite value; the replication that
/// hit it is reported as unstable (N/A).
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultSigmaFloor = 1e-3;

/// Output of the actor's Gaussian head for one input.
struct GaussianHead {
  double mu = 0.0;
  double sigma = 1.0;
  double sigma_raw = 0.0;   // pre-softplus network output
  bool sigma_clamped = false;
};

/// Gaussian pricing strategy: an actor network with a mean head (output 0)
/// and a dispersion head (output 1, softplus with a floor).
class PolicyModel {
 public:
  PolicyModel(std::vector<std::size_t> hidden_layers, AdamConfig adam,
              double sigma_floor = kDefaultSigmaFloor);

  GaussianHead head(const DenseNetwork::Trace& trace) const;
  GaussianHead evaluate(const FeatureVector& features) const;
  GaussianHead evaluate(const FeatureVector& features, DenseNetwork::Trace& trace) const;

  DenseNetwork& network() { return net_; }
  const DenseNetwork& network() const { return net_; }
  AdamOptimizer& optimizer() { return opt_; }
  const AdamOptimizer& optimizer() const { return opt_; }
  double sigma_floor() const { return sigma_floor_; }

 private:
  DenseNetwork net_;
  AdamOptimizer opt_;
  double sigma_floor_;
};

/// Q-value estimate Q(price, job, state) with the scaled price as last input.
class CriticModel {
 public:
  CriticModel(std::vector<std::size_t> hidden_layers, AdamConfig adam);

  double q(const FeatureVector& critic_features) const;
  double q(const FeatureVector& critic_features, DenseNetwork::Trace& trace) const;

  DenseNetwork& network() { return net_; }
  const DenseNetwork& network() const { return net_; }
  AdamOptimizer& optimizer() { return opt_; }
  const AdamOptimizer& optimizer() const { return opt_; }

 private:
  DenseNetwork net_;
  AdamOptimizer opt_;
};

struct ActionSample {
  double price = 0.0;
  double mu = 0.0;
  double sigma = 1.0;
};

/// Draws a price from N(mu, sigma) of the actor's head.
/// Throws DivergenceError on a non-finite head.
ActionSample sample_action(const PolicyModel& model, const FeatureVector& features, Rng& rng);

double softplus(double x);
double inverse_softplus(double y);

/// -log N(price; mu, sigma) * signal.
double gaussian_actor_loss(double price, double mu, double sigma, double signal);

struct GaussianLossGradient {
  double d_mu = 0.0;
  double d_sigma = 0.0;
};
GaussianLossGradient gaussian_actor_loss_gradient(double price, double mu, double sigma,
                                                  double signal);

/// (observed - q)^2
double critic_loss(double q, double observed);
double critic_loss_gradient(double q, double observed);

/// Learning-signal variants of the policy-gradient update.
enum class Algorithm {
  kPolicyGradient,
  kPolicyGradientBaseline,
  kQValue,
  kTd1,
  kAdvantage,
};

Algorithm parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm algorithm);
bool uses_critic(Algorithm algorithm);

double compute_signal(Algorithm algorithm, double vhat, double baseline, double q_sampled,
                      double q_mean);

/// He-initialised hidden layers; final layer zero except the head biases,
/// which start the policy at exactly (bias_init, sigma_init) for any input.
PolicyModel init_policy(const std::vector<std::size_t>& hidden_layers, double bias_init,
                        double sigma_init, AdamConfig adam, Rng& rng,
                        double sigma_floor = kDefaultSigmaFloor);

/// He-initialised hidden layers; final layer all zero, so Q starts at 0.
CriticModel init_critic(const std::vector<std::size_t>& hidden_layers, AdamConfig adam, Rng& rng);

}  // namespace freight
