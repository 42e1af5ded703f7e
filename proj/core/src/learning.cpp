#include "freight/learning.hpp"

#include <cmath>
#include <fmt/format.h>

namespace freight {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw DivergenceError(fmt::format("non-finite {} after update", what));
  }
}

void scale(std::vector<double>& grad, std::size_t n) {
  if (n == 0) return;
  const double k = 1.0 / static_cast<double>(n);
  for (double& g : grad) g *= k;
}

}  // namespace

std::vector<double> due_class_baselines(const AgentLog& log) {
  std::vector<double> sum(log.completion_counts.size(), 0.0);
  std::vector<double> count(log.completion_counts.size(), 0.0);
  for (const Observation& o : log.observations) {
    const auto k = static_cast<std::size_t>(o.due);
    if (k >= sum.size()) {
      sum.resize(k + 1, 0.0);
      count.resize(k + 1, 0.0);
    }
    sum[k] += o.vhat;
    count[k] += 1.0;
  }
  for (std::size_t k = 0; k < sum.size(); ++k) {
    if (count[k] > 0.0) sum[k] /= count[k];
  }
  return sum;
}

std::vector<double> actor_gradient(const Learner& learner, const AgentLog& log,
                                   double* total_loss) {
  const DenseNetwork& net = learner.actor.network();
  std::vector<double> grad(net.num_params(), 0.0);
  const bool need_critic = uses_critic(learner.algorithm);
  if (need_critic && !learner.critic) {
    throw std::invalid_argument(
        fmt::format("algorithm '{}' needs a critic", to_string(learner.algorithm)));
  }
  const std::vector<double> baselines = learner.algorithm == Algorithm::kPolicyGradientBaseline
                                            ? due_class_baselines(log)
                                            : std::vector<double>{};

  DenseNetwork::Trace trace;
  double loss = 0.0;
  std::array<double, 2> out_grad{};
  for (const Observation& o : log.observations) {
    const GaussianHead h = learner.actor.evaluate(o.features, trace);
    double q_sampled = 0.0, q_mean = 0.0;
    if (need_critic) {
      q_sampled = learner.critic->q(o.features.with_action(o.price / learner.action_scale));
      if (learner.algorithm == Algorithm::kAdvantage) {
        q_mean = learner.critic->q(o.features.with_action(h.mu / learner.action_scale));
      }
    }
    const double baseline =
        baselines.empty() ? 0.0 : baselines[static_cast<std::size_t>(o.due)];
    const double signal = compute_signal(learner.algorithm, o.vhat, baseline, q_sampled, q_mean);
    if (signal == 0.0) continue;
    loss += gaussian_actor_loss(o.price, h.mu, h.sigma, signal);
    const GaussianLossGradient g = gaussian_actor_loss_gradient(o.price, h.mu, h.sigma, signal);
    out_grad[0] = g.d_mu;
    out_grad[1] = h.sigma_clamped ? 0.0 : g.d_sigma * sigmoid(h.sigma_raw);
    net.backward(trace, out_grad, grad);
  }
  if (learner.average_gradients) scale(grad, log.observations.size());
  if (total_loss) *total_loss = loss;
  return grad;
}

std::vector<double> critic_gradient(const Learner& learner, const AgentLog& log,
                                    double* total_loss) {
  if (!learner.critic) return {};
  const CriticModel& critic = *learner.critic;
  std::vector<double> grad(critic.network().num_params(), 0.0);
  DenseNetwork::Trace trace;
  double loss = 0.0;
  std::array<double, 1> out_grad{};
  for (const Observation& o : log.observations) {
    const double q = critic.q(o.features.with_action(o.price / learner.action_scale), trace);
    loss += critic_loss(q, o.vhat);
    out_grad[0] = critic_loss_gradient(q, o.vhat);
    critic.network().backward(trace, out_grad, grad);
  }
  if (learner.average_gradients) scale(grad, log.observations.size());
  if (total_loss) *total_loss = loss;
  return grad;
}

UpdateStats update_learner(Learner& learner, const AgentLog& log) {
  UpdateStats stats;
  stats.observations = log.observations.size();
  // Both gradients are taken before either network moves.
  std::vector<double> actor_grad = actor_gradient(learner, log, &stats.actor_loss);
  std::vector<double> crit_grad;
  if (learner.critic) crit_grad = critic_gradient(learner, log, &stats.critic_loss);

  check_finite(actor_grad, "actor gradient");
  learner.actor.optimizer().step(learner.actor.network().params(), actor_grad);
  check_finite(learner.actor.network().params(), "actor weights");
  if (learner.critic) {
    check_finite(crit_grad, "critic gradient");
    learner.critic->optimizer().step(learner.critic->network().params(), crit_grad);
    check_finite(learner.critic->network().params(), "critic weights");
  }
  return stats;
}

void update_policies(Learner* shipper, Learner* carrier, const EpisodeLog& log) {
  if (shipper) update_learner(*shipper, log.shipper);
  if (carrier) update_learner(*carrier, log.carrier);
}

}  // namespace freight
