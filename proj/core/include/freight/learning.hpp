#pragma once

#include <optional>
#include <vector>

#include "freight/episode_log.hpp"
#include "freight/policy.hpp"

namespace freight {

/// A learning agent: actor, optional critic, and the update rule.
struct Learner {
  PolicyModel actor;
  std::optional<CriticModel> critic;
  Algorithm algorithm = Algorithm::kPolicyGradient;
  double action_scale = 1.0;        // price divisor for the critic's action feature
  bool average_gradients = false;   // sum per-observation gradients unless set
};

struct UpdateStats {
  std::size_t observations = 0;
  double actor_loss = 0.0;
  double critic_loss = 0.0;
};

/// Per-due-class mean of vhat over the log's observations (the baseline).
/// Classes without observations get 0.
std::vector<double> due_class_baselines(const AgentLog& log);

/// Gradient of the summed actor loss over `log` w.r.t. the actor parameters,
/// with the current critic supplying Q-values where the algorithm needs them.
std::vector<double> actor_gradient(const Learner& learner, const AgentLog& log,
                                   double* total_loss = nullptr);

/// Gradient of the summed critic loss (vhat - Q(price))^2.
std::vector<double> critic_gradient(const Learner& learner, const AgentLog& log,
                                    double* total_loss = nullptr);

/// One ADAM step on the actor (and critic, when present) from one episode.
/// Throws DivergenceError on non-finite gradients or parameters.
UpdateStats update_learner(Learner& learner, const AgentLog& log);

/// Updates both agents from their own information vectors. A null learner
/// (frozen opponent) is skipped.
void update_policies(Learner* shipper, Learner* carrier, const EpisodeLog& log);

}  // namespace freight
