#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "freight/broker.hpp"
#include "freight/market.hpp"
#include "freight/metrics.hpp"

namespace freight::testing {

inline Job job(JobId id, int due, int distance, int volume) {
  return Job{id, due, distance, volume, due};
}

inline MarketState state_of(std::vector<Job> jobs, std::int64_t epoch = 0) {
  MarketState s;
  s.epoch = epoch;
  s.jobs = std::move(jobs);
  return s;
}

inline QuoteSheet quotes_for(const MarketState& s, std::vector<double> bids,
                             std::vector<double> asks) {
  QuoteSheet q;
  q.epoch = s.epoch;
  for (const Job& j : s.jobs) q.ids.push_back(j.id);
  q.bids = std::move(bids);
  q.asks = std::move(asks);
  return q;
}

inline JobOutcome shipped_outcome(double ask, double bid, double cost, double pay) {
  JobOutcome o;
  o.econ = {pay, cost};
  o.ask = ask;
  o.bid = bid;
  o.shipped = true;
  o.volume = 1;
  o.shipper_reward = pay - bid;
  o.carrier_reward = ask - cost;
  return o;
}

inline CaseConfig case2_with_capacity(int capacity) {
  CaseConfig c = case_preset("case2-cap40");
  c.capacity = capacity;
  return c;
}

struct BruteForce {
  double best_spread = 0.0;
  int best_volume = 0;
};

/// Exhaustive optimum over all subsets: best positive-spread value and best
/// volume under `capacity`.
inline BruteForce brute_force(const MarketState& s, const QuoteSheet& q, int capacity) {
  BruteForce out;
  const std::size_t n = s.jobs.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int volume = 0;
    double spread = 0.0;
    bool positive = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1u)) continue;
      volume += s.jobs[i].volume;
      spread += q.spread(i);
      positive = positive && q.spread(i) > 0.0;
    }
    if (volume > capacity) continue;
    out.best_volume = std::max(out.best_volume, volume);
    if (positive) out.best_spread = std::max(out.best_spread, spread);
  }
  return out;
}

/// Random instance with dyadic spreads in [-5, 5], so sums are exact.
template <class Engine>
std::pair<MarketState, QuoteSheet> random_instance(Engine& eng, int max_jobs, int max_volume) {
  std::uniform_int_distribution<int> count(0, max_jobs), vol(1, max_volume), ticks(-5 * 1024, 5 * 1024);
  MarketState s;
  const int n = count(eng);
  for (int i = 0; i < n; ++i) s.jobs.push_back(job(i, 1, 1, vol(eng)));
  std::vector<double> bids, asks;
  for (int i = 0; i < n; ++i) {
    asks.push_back(ticks(eng) / 1024.0);
    bids.push_back(asks.back() + ticks(eng) / 1024.0);
  }
  QuoteSheet q = quotes_for(s, bids, asks);
  return {std::move(s), std::move(q)};
}

}  // namespace freight::testing
