#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "freight/metrics.hpp"
#include "support.hpp"

namespace freight {
namespace {

template <class Engine>
JobOutcome random_outcome(Engine& eng) {
  std::uniform_int_distribution<int> dv(1, 5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution ship(0.8);
  const double scale = dv(eng) * dv(eng);
  const double cost = scale, pay = 2.0 * scale;
  double ask = cost - 0.3 * scale + 1.6 * scale * u(eng);
  double bid = ask + 0.8 * scale * u(eng);
  JobOutcome o = testing::shipped_outcome(ask, bid, cost, pay);
  o.volume = dv(eng);
  if (!ship(eng)) {
    o.shipped = false;
    o.shipper_reward = o.carrier_reward = 0.0;
  }
  return o;
}

TEST(MetricsProperty, MarketMetricsStayInUnitInterval) {
  std::mt19937_64 eng(41);
  for (int i = 0; i < 100000; ++i) {
    const JobOutcome o = random_outcome(eng);
    const double a = nash_adherence(o);
    ASSERT_GE(a, 0.0);
    ASSERT_LE(a, 1.0);
    if (const auto f = fairness(o)) {
      ASSERT_GE(*f, 0.0);
      ASSERT_LE(*f, 1.0);
    }
  }
}

TEST(MetricsProperty, PerfectScoresCharacterizeEquilibria) {
  std::mt19937_64 eng(42);
  std::uniform_real_distribution<double> u(1.0, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = u(eng);
    EXPECT_EQ(nash_adherence(testing::shipped_outcome(x, x, 1.0, 2.0)), 1.0);
    EXPECT_LT(nash_adherence(testing::shipped_outcome(x - 0.01, x, 1.0, 2.0)), 1.0);
    const double d = 0.5 * (u(eng) - 1.0);
    EXPECT_NEAR(*fairness(testing::shipped_outcome(1.0 + d, 2.0 - d, 1.0, 2.0)), 1.0, 1e-12);
    EXPECT_LT(*fairness(testing::shipped_outcome(1.0 + d + 0.01, 2.0 - d, 1.0, 2.0)), 1.0);
  }
}

TEST(MetricsProperty, SharesSumToOne) {
  std::mt19937_64 eng(43);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<JobOutcome> v(20);
    for (auto& o : v) o = random_outcome(eng);
    v[0].shipped = true;
    const RewardShares r = reward_shares(v);
    ASSERT_TRUE(r.shipper && r.carrier && r.broker);
    EXPECT_NEAR(*r.shipper + *r.carrier + *r.broker, 1.0, 1e-12);
  }
}

TEST(MetricsProperty, EpisodeMetricsIgnoreJobOrder) {
  std::mt19937_64 eng(44);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<JobOutcome> v(30);
    for (auto& o : v) o = random_outcome(eng);
    auto summarize = [](const std::vector<JobOutcome>& jobs) {
      EpisodeMetricsAccumulator acc;
      for (const auto& o : jobs) acc.add_outcome(o);
      return acc.finish();
    };
    const EpisodeMetrics a = summarize(v);
    std::shuffle(v.begin(), v.end(), eng);
    const EpisodeMetrics b = summarize(v);
    for (const MetricField& f : kMetricFields) {
      const double x = a.*f.member, y = b.*f.member;
      if (std::isnan(x)) {
        EXPECT_TRUE(std::isnan(y)) << f.name;
      } else {
        EXPECT_NEAR(x, y, 1e-12) << f.name;
      }
    }
  }
}

TEST(MetricsProperty, WarmupLeavesCeilingOfNinetyPercent) {
  for (std::size_t m = 1; m <= 5000; ++m) {
    ASSERT_EQ(m - warmup_episodes(m), (9 * m + 9) / 10) << m;
    const std::size_t w = end_window_episodes(m);
    ASSERT_GE(w, 1u);
    ASSERT_EQ(w, (m + 19) / 20) << m;
  }
}

TEST(MetricsProperty, SummaryAveragesExactlyTheTrailingEpisodes) {
  std::vector<EpisodeMetrics> rows(37);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].utilization = static_cast<double>(i);
  const MetricsReport r = summarize_episodes(rows);
  // 3 warm-up episodes dropped, 34 kept: mean of 3..36.
  EXPECT_DOUBLE_EQ(r["utilization"].average, (3.0 + 36.0) / 2.0);
  // End window of two episodes: 35 and 36.
  EXPECT_DOUBLE_EQ(r["utilization"].end_of_horizon, 35.5);
}

}  // namespace
}  // namespace freight
