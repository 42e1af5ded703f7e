#include <gtest/gtest.h>

#include "freight/config.hpp"
#include "freight/simulation.hpp"

namespace freight {
namespace {

EpisodeLog scripted_case1(double bid, double ask, int days) {
  CaseConfig c = case_preset("case1");
  c.horizon_days = days;
  const Participant shipper{nullptr, ScriptedPrice{ScriptedPrice::Anchor::kAbsolute, bid}, 1.0, nullptr};
  const Participant carrier{nullptr, ScriptedPrice{ScriptedPrice::Anchor::kAbsolute, ask}, 1.0, nullptr};
  Rng arrivals = make_stream(1, Stream::kArrivals);
  JobIdSource ids;
  return run_episode(c, FeatureScales::for_case(c), shipper, carrier, arrivals, ids);
}

TEST(HarnessOracle, ScriptedProfitableQuotesShipEverything) {
  const EpisodeLog log = scripted_case1(1.6, 1.4, 10);
  EXPECT_EQ(log.metrics.shipped, 10);
  EXPECT_EQ(log.metrics.failed, 0);
  EXPECT_NEAR(log.broker_total, 2.0, 1e-12);
}

TEST(HarnessOracle, ScriptedCrossedQuotesFailEverything) {
  const EpisodeLog log = scripted_case1(1.0, 1.5, 10);
  EXPECT_EQ(log.metrics.shipped, 0);
  EXPECT_EQ(log.metrics.failed, 10);
  EXPECT_EQ(log.broker_total, 0.0);
}

TEST(HarnessOracle, MinimalRunHasOneRow) {
  ExperimentConfig c = preset("case1-tuned");
  c.replications = 1;
  c.market.episodes = 1;
  c.market.horizon_days = 1;
  const RunResult r = run_experiment(c);
  ASSERT_EQ(r.replications.size(), 1u);
  EXPECT_EQ(r.replications[0].episodes.size(), 1u);
}

TEST(HarnessOracle, TunedPreset) {
  const ExperimentConfig c = preset("case1-tuned");
  for (const AgentConfig* a : {&c.shipper, &c.carrier}) {
    EXPECT_EQ(a->profile.learning_rate, 0.001);
    EXPECT_EQ(a->profile.sigma_init, 0.1);
    EXPECT_EQ(a->profile.penalty_slope, 1.0);
    EXPECT_EQ(a->hidden_layers, std::vector<std::size_t>{20});
  }
  EXPECT_EQ(c.carrier.profile.bias_init, 1.0);
  EXPECT_EQ(c.shipper.profile.bias_init, 2.0);
  EXPECT_EQ(c.market.episodes, 1000);
  EXPECT_EQ(c.market.horizon_days, 1000);
  EXPECT_EQ(c.replications, 5);
}

TEST(HarnessOracle, RiskPresetSeekingCarrierVsAverseShipper) {
  const ExperimentConfig c = preset("case1-risk-RS-vs-RA");
  EXPECT_EQ(c.carrier.profile.bias_init, 1.0);
  EXPECT_EQ(c.carrier.profile.penalty_slope, 2.0);
  EXPECT_EQ(c.carrier.profile.learning_rate, 0.005);
  EXPECT_EQ(c.shipper.profile.bias_init, 2.0);
  EXPECT_EQ(c.shipper.profile.penalty_slope, 2.0);
  EXPECT_EQ(c.shipper.profile.learning_rate, 0.0001);
}

TEST(HarnessOracle, CaseTwoNeutralBiasPreset) {
  const ExperimentConfig c = preset("case2-cap40-ra-rnbias");
  for (const AgentConfig* a : {&c.shipper, &c.carrier}) {
    EXPECT_EQ(a->profile.bias_init, 13.5);
    EXPECT_EQ(a->profile.learning_rate, 0.0001);
    EXPECT_EQ(a->profile.penalty_slope, 2.0);
  }
  EXPECT_EQ(c.market.capacity, 40);
}

TEST(HarnessOracle, UnknownPresetListsNames) {
  try {
    preset("no-such-experiment");
    FAIL() << "expected an exception";
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("case1-tuned"), std::string::npos);
    EXPECT_NE(msg.find("verify-fixed-ask"), std::string::npos);
  }
}

}  // namespace
}  // namespace freight
