#pragma once

#include <cstdint>
#include <vector>

#include "freight/market.hpp"

namespace freight {

/// Bid and ask per open job, aligned with MarketState::jobs.
struct QuoteSheet {
  std::int64_t epoch = 0;
  std::vector<JobId> ids;
  std::vector<double> bids;
  std::vector<double> asks;

  std::size_t size() const { return ids.size(); }
  double spread(std::size_t i) const { return bids[i] - asks[i]; }
};

/// Broker decision, aligned with MarketState::jobs.
struct Allocation {
  std::vector<JobId> ids;
  std::vector<std::uint8_t> shipped;
  double total_spread = 0.0;
  int used_volume = 0;

  std::size_t shipped_count() const;
};

/// Exact 0-1 knapsack maximising total bid-ask spread under `capacity`.
/// Jobs with spread <= 0 never ship. Among equal-value selections the one
/// built from lower job ids wins.
Allocation allocate(const MarketState& state, const QuoteSheet& quotes, int capacity);

/// Sum of spreads over shipped jobs.
double broker_reward(const Allocation& allocation, const QuoteSheet& quotes);

/// Volume-maximising knapsack, ignoring prices. Denominator of the
/// utilization metric.
Allocation max_volume_allocation(const MarketState& state, int capacity);

}  // namespace freight
