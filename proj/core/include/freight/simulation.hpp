#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "freight/checkpoint.hpp"
#include "freight/config.hpp"
#include "freight/episode_log.hpp"
#include "freight/features.hpp"
#include "freight/learning.hpp"
#include "freight/metrics.hpp"

namespace freight {

/// One side of the market during an episode: either a Gaussian policy or a
/// scripted fixed price.
struct Participant {
  const PolicyModel* policy = nullptr;
  std::optional<ScriptedPrice> script;
  double penalty_slope = 1.0;
  Rng* rng = nullptr;  // draws prices; unused by a scripted participant
};

struct EpisodeOptions {
  bool record_epochs = false;  // keep per-epoch state, quotes and allocations
};

/// Simulates one episode of `config.horizon_days` epochs from an empty market.
/// Jobs still open at the end are dropped from both agents' logs.
/// Throws DivergenceError on a non-finite price.
EpisodeLog run_episode(const CaseConfig& config, const FeatureScales& scales,
                       const Participant& shipper, const Participant& carrier, Rng& arrivals,
                       JobIdSource& ids, const EpisodeOptions& options = {});

/// Fresh learner from an agent configuration; null for a frozen agent.
std::optional<Learner> make_learner(const AgentConfig& agent, const CaseConfig& market,
                                    bool average_gradients, Rng& actor_init, Rng& critic_init);

struct ReplicationResult {
  int index = 0;
  std::uint64_t seed = 0;
  std::vector<EpisodeMetrics> episodes;
  MetricsReport report;  // all N/A when unstable
  bool stable = true;
  std::string failure;
  MarketCheckpoint final_models;
};

struct Progress {
  int replication = 0;
  int episode = 0;  // episodes completed in this replication
  int episodes = 0;
};

struct RunOptions {
  std::function<void(const Progress&)> on_progress;
  std::optional<MarketCheckpoint> resume;  // start every replication from these models
};

/// Runs `config.market.episodes` episodes with a policy update after each.
ReplicationResult run_replication(const ExperimentConfig& config, int index,
                                  const RunOptions& options = {});

struct PooledStat {
  double mean = kNotAvailable;
  double stdev = kNotAvailable;  // sample standard deviation; N/A below two values
  int count = 0;
};

struct PooledMetric {
  PooledStat average;
  PooledStat end_of_horizon;
};

/// Mean and spread across replications of each metric; unstable replications
/// and N/A values are skipped.
std::array<PooledMetric, kMetricFields.size()> pool_replications(
    const std::vector<ReplicationResult>& replications);

struct RunResult {
  ExperimentConfig config;
  std::vector<ReplicationResult> replications;
  std::array<PooledMetric, kMetricFields.size()> pooled;
  std::chrono::duration<double> wall_time{};

  int unstable_count() const;
  const PooledMetric& pooled_metric(std::string_view name) const;
};

/// All replications in sequence (seed = config.seed + index), without I/O.
RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace freight
