#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "freight/broker.hpp"
#include "freight/features.hpp"
#include "freight/market.hpp"
#include "freight/metrics.hpp"

namespace freight {

/// One quote an agent posted for one job at one epoch.
struct Observation {
  JobId job = 0;
  std::int64_t epoch = 0;
  int due = 0;  // due date at the time of the quote
  FeatureVector features;
  double price = 0.0;
  double reward = 0.0;  // per-epoch reward including penalties
  double vhat = 0.0;    // cumulative reward of the job up to and including this quote
};

/// One agent's view of an episode: only its own prices and rewards plus the
/// broker's decisions about its jobs. Holds observations of completed jobs
/// only; jobs still open when the episode ends are dropped.
struct AgentLog {
  std::vector<Observation> observations;
  std::vector<std::int64_t> completion_counts;  // K, indexed by due class
  std::vector<JobId> completed;
};

/// Accumulates per-job reward trajectories and moves them into an AgentLog
/// when the job completes.
class AgentLogBuilder {
 public:
  explicit AgentLogBuilder(int max_due);

  /// Appends a quote; vhat = reward + vhat of the job's previous quote.
  const Observation& record(const Job& job, std::int64_t epoch, const FeatureVector& features,
                            double price, double reward);
  /// Job was shipped or failed: its observations become usable.
  void complete(JobId job);
  /// Observations of the job so far (empty if unknown).
  const std::vector<Observation>* pending(JobId job) const;

  AgentLog finish() &&;

 private:
  std::unordered_map<JobId, std::vector<Observation>> pending_;
  AgentLog log_;
};

struct EpochRecord {
  MarketState state;
  QuoteSheet quotes;
  Allocation allocation;
};

/// Per-agent information vectors for one episode plus the market trace.
struct EpisodeLog {
  std::vector<EpochRecord> epochs;
  AgentLog shipper;
  AgentLog carrier;
  std::vector<JobOutcome> outcomes;  // completed jobs in completion order
  EpisodeMetrics metrics;
  double broker_total = 0.0;

  /// Canonical text dump; equal logs produce identical bytes.
  std::string serialize() const;
};

}  // namespace freight
