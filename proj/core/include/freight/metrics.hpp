#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "freight/broker.hpp"
#include "freight/market.hpp"

namespace freight {

inline constexpr double kNotAvailable = std::numeric_limits<double>::quiet_NaN();

/// A completed job (shipped or failed) with the quotes of its final epoch.
struct JobOutcome {
  JobId id = 0;
  JobEconomics econ;  // c_min = trn_cost, c_max = max_pay
  double bid = 0.0;
  double ask = 0.0;
  bool shipped = false;
  int volume = 0;
  // Realized rewards, penalties excluded (0 for failed jobs).
  double shipper_reward = 0.0;
  double carrier_reward = 0.0;
};

/// 1 - spread / surplus for shipped jobs, clamped at 0; 0 for failed jobs.
double nash_adherence(const JobOutcome& outcome);

/// 1 - |carrier surplus - shipper surplus| / (sum of surpluses), clamped at 0.
/// Empty for failed jobs and for a zero denominator.
std::optional<double> fairness(const JobOutcome& outcome);

/// Shipped volume over the volume-maximising knapsack's volume; 1 when no
/// volume can be shipped at all.
double relative_utilization(const MarketState& state, const Allocation& allocation, int capacity);

struct RewardShares {
  // Shares of the surplus of shipped jobs; empty when nothing shipped.
  std::optional<double> shipper;
  std::optional<double> carrier;
  std::optional<double> broker;
  // Realized rewards over the surplus of all completed jobs, failed included.
  std::optional<double> net_shipper;
  std::optional<double> net_carrier;
  std::optional<double> net_broker;
};

RewardShares reward_shares(std::span<const JobOutcome> outcomes);

/// Per-episode metric row. Undefined values are NaN.
struct EpisodeMetrics {
  double utilization = kNotAvailable;
  double nash_adherence = kNotAvailable;
  double fairness = kNotAvailable;
  double share_shipper = kNotAvailable;
  double share_carrier = kNotAvailable;
  double share_broker = kNotAvailable;
  double net_shipper = kNotAvailable;
  double net_carrier = kNotAvailable;
  double net_broker = kNotAvailable;
  double mu_shipper = kNotAvailable;
  double sigma_shipper = kNotAvailable;
  double mu_carrier = kNotAvailable;
  double sigma_carrier = kNotAvailable;
  double mean_bid = kNotAvailable;
  double mean_ask = kNotAvailable;
  std::int64_t shipped = 0;
  std::int64_t failed = 0;
  std::int64_t fairness_excluded = 0;
};

/// Named access to the real-valued fields of EpisodeMetrics, in CSV order.
struct MetricField {
  std::string_view name;
  double EpisodeMetrics::*member;
};
inline constexpr std::array<MetricField, 15> kMetricFields{{
    {"utilization", &EpisodeMetrics::utilization},
    {"nash_adherence", &EpisodeMetrics::nash_adherence},
    {"fairness", &EpisodeMetrics::fairness},
    {"share_shipper", &EpisodeMetrics::share_shipper},
    {"share_carrier", &EpisodeMetrics::share_carrier},
    {"share_broker", &EpisodeMetrics::share_broker},
    {"net_shipper", &EpisodeMetrics::net_shipper},
    {"net_carrier", &EpisodeMetrics::net_carrier},
    {"net_broker", &EpisodeMetrics::net_broker},
    {"mu_shipper", &EpisodeMetrics::mu_shipper},
    {"sigma_shipper", &EpisodeMetrics::sigma_shipper},
    {"mu_carrier", &EpisodeMetrics::mu_carrier},
    {"sigma_carrier", &EpisodeMetrics::sigma_carrier},
    {"mean_bid", &EpisodeMetrics::mean_bid},
    {"mean_ask", &EpisodeMetrics::mean_ask},
}};

class EpisodeMetricsAccumulator {
 public:
  void add_epoch(int shipped_volume, int max_shippable_volume);
  void add_quote(double mu_shipper, double sigma_shipper, double bid, double mu_carrier,
                 double sigma_carrier, double ask);
  void add_outcome(const JobOutcome& outcome);

  EpisodeMetrics finish() const;

 private:
  std::int64_t shipped_volume_ = 0;
  std::int64_t max_volume_ = 0;
  std::int64_t quotes_ = 0;
  double mu_s_ = 0.0, sigma_s_ = 0.0, bid_ = 0.0;
  double mu_c_ = 0.0, sigma_c_ = 0.0, ask_ = 0.0;
  std::vector<JobOutcome> outcomes_;
};

/// Average (warm-up excluded) and end-of-horizon value of one metric.
struct MetricSummary {
  double average = kNotAvailable;
  double end_of_horizon = kNotAvailable;
};

struct MetricsReport {
  std::array<MetricSummary, kMetricFields.size()> values;

  const MetricSummary& operator[](std::string_view name) const;
};

/// Episodes excluded as warm-up: floor(10% of M), leaving ceil(0.9 M).
std::size_t warmup_episodes(std::size_t episodes);
/// Episodes in the end-of-horizon window: ceil(5% of M), at least 1.
std::size_t end_window_episodes(std::size_t episodes);

/// Means of each metric over the post-warm-up episodes and over the final
/// window, skipping NaN entries.
MetricsReport summarize_episodes(std::span<const EpisodeMetrics> rows);

}  // namespace freight
