#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "freight/rng.hpp"

namespace freight {

using JobId = std::int64_t;

/// Closed integer interval [lo, hi].
struct IntRange {
  int lo = 0;
  int hi = 0;

  bool contains(int x) const { return lo <= x && x <= hi; }
  double mean() const { return 0.5 * (lo + hi); }
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

/// One transport job ("smart container").
struct Job {
  JobId id = 0;
  int due = 0;       // epochs left until the job fails if unshipped
  int distance = 1;  // miles
  int volume = 1;    // capacity units
  int born_due = 0;  // due date at arrival

  friend bool operator==(const Job&, const Job&) = default;
};

/// Open jobs at one decision epoch.
struct MarketState {
  std::int64_t epoch = 0;
  std::vector<Job> jobs;

  bool empty() const { return jobs.empty(); }
  std::size_t size() const { return jobs.size(); }
  int total_volume() const;
  friend bool operator==(const MarketState&, const MarketState&) = default;
};

struct CaseConfig {
  std::string name;
  IntRange arrivals_per_day{1, 1};
  IntRange due_range{0, 0};
  IntRange distance_range{1, 1};
  IntRange volume_range{1, 1};
  double willingness_rate = 2.0;  // money per volume-mile
  double transport_rate = 1.0;    // money per volume-mile
  int capacity = 1;
  int max_open_jobs = 50;
  int horizon_days = 1000;  // days per episode
  int episodes = 1000;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;

  int max_due() const { return due_range.hi; }
  int max_distance() const { return distance_range.hi; }
  int max_volume() const { return volume_range.hi; }
};

/// Named market presets: "case1", "case2-cap40", "case2-cap300".
CaseConfig case_preset(std::string_view name);
std::vector<std::string> case_preset_names();

struct JobEconomics {
  double max_pay = 0.0;   // shipper's willingness to pay for this job
  double trn_cost = 0.0;  // carrier's marginal transport cost

  double surplus() const { return max_pay - trn_cost; }
};

JobEconomics job_economics(const Job& job, const CaseConfig& config);

/// Monotone job id source for one replication.
class JobIdSource {
 public:
  explicit JobIdSource(JobId first = 0) : next_(first) {}
  JobId next() { return next_++; }
  JobId peek() const { return next_; }

 private:
  JobId next_;
};

/// Draws one day's arrivals. At most `max_open_jobs - open_jobs` jobs are
/// returned; the arrival count is drawn before truncation.
std::vector<Job> generate_arrivals(const CaseConfig& config, Rng& rng, JobIdSource& ids,
                                   std::size_t open_jobs = 0);

double shipper_reward(bool shipped, double bid, const JobEconomics& econ, double penalty_slope);

double carrier_reward(bool shipped, double ask, const JobEconomics& econ, double penalty_slope,
                      int idle_capacity);

struct TransitionResult {
  MarketState next;
  std::vector<Job> shipped;
  std::vector<Job> failed;
};

/// Shipped jobs leave, unshipped jobs at due 0 fail, the rest age one epoch,
/// then arrivals are appended. `shipped_flags` is aligned with `state.jobs`
/// and `flag_ids` must list the same ids in the same order.
TransitionResult transition(const MarketState& state, std::span<const Job> arrivals,
                            std::span<const JobId> flag_ids,
                            std::span<const std::uint8_t> shipped_flags);

}  // namespace freight
