#include <gtest/gtest.h>

#include "freight/market.hpp"
#include "support.hpp"

namespace freight {
namespace {

using testing::job;
using testing::state_of;

TEST(MarketOracle, CaseOneArrivalIsSingleUnitJob) {
  const CaseConfig c = case_preset("case1");
  Rng rng = make_stream(3, Stream::kArrivals);
  JobIdSource ids;
  for (int epoch = 0; epoch < 5; ++epoch) {
    const auto jobs = generate_arrivals(c, rng, ids);
    ASSERT_EQ(jobs.size(), 1u);
    EXPECT_EQ(jobs[0].due, 0);
    EXPECT_EQ(jobs[0].distance, 1);
    EXPECT_EQ(jobs[0].volume, 1);
  }
}

TEST(MarketOracle, ZeroArrivalRangeYieldsNothing) {
  CaseConfig c = case_preset("case2-cap40");
  c.arrivals_per_day = {0, 0};
  Rng rng = make_stream(42, Stream::kArrivals);
  JobIdSource ids;
  EXPECT_TRUE(generate_arrivals(c, rng, ids).empty());
}

TEST(MarketOracle, SameSeedSameArrivals) {
  const CaseConfig c = case_preset("case2-cap40");
  Rng a = make_stream(42, Stream::kArrivals);
  Rng b = make_stream(42, Stream::kArrivals);
  JobIdSource ia, ib;
  for (int day = 0; day < 20; ++day) {
    EXPECT_EQ(generate_arrivals(c, a, ia), generate_arrivals(c, b, ib));
  }
}

TEST(MarketOracle, JobEconomics) {
  const JobEconomics e1 = job_economics(job(0, 0, 1, 1), case_preset("case1"));
  EXPECT_DOUBLE_EQ(e1.max_pay, 2.0);
  EXPECT_DOUBLE_EQ(e1.trn_cost, 1.0);
  const JobEconomics e2 = job_economics(job(0, 3, 5, 5), case_preset("case2-cap40"));
  EXPECT_DOUBLE_EQ(e2.max_pay, 50.0);
  EXPECT_DOUBLE_EQ(e2.trn_cost, 25.0);
}

TEST(MarketOracle, EqualRatesAreRejected) {
  CaseConfig c = case_preset("case1");
  c.willingness_rate = 1.0;
  c.transport_rate = 1.0;
  EXPECT_DOUBLE_EQ(job_economics(job(0, 0, 1, 1), c).max_pay, 1.0);
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(MarketOracle, ShipperReward) {
  const JobEconomics e{2.0, 1.0};
  EXPECT_DOUBLE_EQ(shipper_reward(true, 1.5, e, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(shipper_reward(false, 2.5, e, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(shipper_reward(false, 1.0, e, 2.0), -2.0);
}

TEST(MarketOracle, CarrierReward) {
  const JobEconomics e{2.0, 1.0};
  EXPECT_DOUBLE_EQ(carrier_reward(true, 1.4, e, 1.0, 0), 0.4);
  EXPECT_DOUBLE_EQ(carrier_reward(false, 1.5, e, 1.0, 0), 0.0);
  EXPECT_DOUBLE_EQ(carrier_reward(false, 1.5, e, 1.0, 3), -0.5);
}

TEST(MarketOracle, TransitionShipsAndFails) {
  const MarketState s = state_of({job(1, 0, 1, 1), job(2, 0, 1, 1)});
  const std::vector<JobId> ids{1, 2};
  const std::vector<std::uint8_t> flags{1, 0};
  const TransitionResult r = transition(s, {}, ids, flags);
  EXPECT_TRUE(r.next.jobs.empty());
  ASSERT_EQ(r.shipped.size(), 1u);
  EXPECT_EQ(r.shipped[0].id, 1);
  ASSERT_EQ(r.failed.size(), 1u);
  EXPECT_EQ(r.failed[0].id, 2);
}

TEST(MarketOracle, TransitionAgesOpenJobs) {
  const MarketState s = state_of({job(3, 3, 2, 2)});
  const std::vector<JobId> ids{3};
  const std::vector<std::uint8_t> flags{0};
  const TransitionResult r = transition(s, {}, ids, flags);
  ASSERT_EQ(r.next.jobs.size(), 1u);
  EXPECT_EQ(r.next.jobs[0].due, 2);
  EXPECT_TRUE(r.shipped.empty());
  EXPECT_TRUE(r.failed.empty());
}

TEST(MarketOracle, TransitionAppendsArrivals) {
  const MarketState s = state_of({}, 7);
  const std::vector<Job> arrivals{job(10, 2, 1, 1), job(11, 4, 3, 2)};
  const TransitionResult r = transition(s, arrivals, {}, {});
  EXPECT_EQ(r.next.epoch, 8);
  EXPECT_EQ(r.next.jobs, arrivals);
}

}  // namespace
}  // namespace freight
