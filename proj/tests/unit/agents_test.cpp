#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "freight/episode_log.hpp"
#include "freight/features.hpp"
#include "freight/learning.hpp"
#include "freight/policy.hpp"
#include "freight/risk.hpp"
#include "support.hpp"

namespace freight {
namespace {

using testing::job;
using testing::state_of;

TEST(Features, CaseScales) {
  const FeatureScales s = FeatureScales::for_case(case_preset("case2-cap40"));
  EXPECT_EQ(s.due, 5.0);
  EXPECT_EQ(s.distance, 5.0);
  EXPECT_EQ(s.volume, 5.0);
  EXPECT_EQ(s.total_volume, 250.0);
  EXPECT_EQ(s.job_count, 50.0);
  EXPECT_DOUBLE_EQ(s.action, bias_presets(case_preset("case2-cap40")).avg_pay);
}

TEST(Features, CaseTwoFeaturesStayInUnitRange) {
  const CaseConfig c = case_preset("case2-cap40");
  const FeatureScales s = FeatureScales::for_case(c);
  std::vector<Job> jobs;
  for (int i = 0; i < 50; ++i) jobs.push_back(job(i, i % 6, 1 + i % 5, 5 - i % 5));
  const MarketState st = state_of(jobs);
  for (const Job& j : st.jobs) {
    const FeatureVector f = extract_features(j, st, s);
    ASSERT_EQ(f.size(), kActorFeatures);
    EXPECT_EQ(f[0], 1.0);
    for (std::size_t i = 1; i < f.size(); ++i) {
      EXPECT_GE(f[i], 0.0);
      EXPECT_LE(f[i], 1.0);
    }
  }
}

TEST(Features, ActionFeatureAppended) {
  const MarketState st = state_of({job(1, 0, 1, 1)});
  const FeatureVector f = extract_features(st.jobs[0], st, FeatureScales::identity());
  const FeatureVector g = f.with_action(0.75);
  ASSERT_EQ(g.size(), kCriticFeatures);
  EXPECT_EQ(g[kActorFeatures], 0.75);
  EXPECT_EQ(extract_features(st.jobs[0], st, FeatureScales::identity(), 0.75), g);
  EXPECT_THROW(extract_features(st.jobs[0], state_of({}), FeatureScales::identity()),
               std::invalid_argument);
}

TEST(Policy, SoftplusRoundTrip) {
  for (double y : {1e-6, 0.1, 1.0, 10.0, 100.0}) {
    EXPECT_NEAR(softplus(inverse_softplus(y)), y, 1e-9 * std::max(1.0, y));
  }
  EXPECT_GT(softplus(-800.0), -1e-300);
  EXPECT_NEAR(softplus(800.0), 800.0, 1e-9);
  EXPECT_THROW(inverse_softplus(0.0), std::invalid_argument);
}

TEST(Policy, AlgorithmNames) {
  for (Algorithm a : {Algorithm::kPolicyGradient, Algorithm::kPolicyGradientBaseline,
                      Algorithm::kQValue, Algorithm::kTd1, Algorithm::kAdvantage}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_FALSE(uses_critic(Algorithm::kPolicyGradient));
  EXPECT_FALSE(uses_critic(Algorithm::kPolicyGradientBaseline));
  EXPECT_TRUE(uses_critic(Algorithm::kQValue));
  EXPECT_TRUE(uses_critic(Algorithm::kTd1));
  EXPECT_TRUE(uses_critic(Algorithm::kAdvantage));
  EXPECT_THROW(parse_algorithm("sarsa"), std::invalid_argument);
}

TEST(Policy, NonFiniteHeadDiverges) {
  Rng rng = make_stream(1, Stream::kShipperInit);
  PolicyModel m = init_policy({4}, 2.0, 0.1, {1e-3}, rng);
  m.network().bias(1, 0) = std::numeric_limits<double>::quiet_NaN();
  const MarketState st = state_of({job(1, 0, 1, 1)});
  const FeatureVector f = extract_features(st.jobs[0], st, FeatureScales::identity());
  EXPECT_THROW(sample_action(m, f, rng), DivergenceError);
  EXPECT_THROW(init_policy({4}, 2.0, 0.0, {1e-3}, rng), std::invalid_argument);
}

TEST(Policy, CriticStartsAtZero) {
  Rng rng = make_stream(1, Stream::kShipperCriticInit);
  const CriticModel c = init_critic({8, 8}, {1e-3}, rng);
  const MarketState st = state_of({job(1, 2, 3, 4), job(2, 1, 1, 1)});
  EXPECT_EQ(c.q(extract_features(st.jobs[0], st, FeatureScales::identity(), 1.5)), 0.0);
}

TEST(Learning, PositiveSignalPullsMeanTowardPrice) {
  Rng rng = make_stream(3, Stream::kShipperInit);
  Learner l{init_policy({}, 2.0, 0.5, {1e-2}, rng), std::nullopt, Algorithm::kPolicyGradient};
  const MarketState st = state_of({job(1, 0, 1, 1)});
  const FeatureVector f = extract_features(st.jobs[0], st, FeatureScales::identity());
  AgentLogBuilder b(0);
  b.record(st.jobs[0], 0, f, 2.4, 1.0);
  b.complete(1);
  const AgentLog log = std::move(b).finish();
  update_learner(l, log);
  EXPECT_GT(l.actor.evaluate(f).mu, 2.0);
}

TEST(Learning, CriticAlgorithmsNeedACritic) {
  Rng rng = make_stream(3, Stream::kShipperInit);
  Learner l{init_policy({}, 2.0, 0.5, {1e-2}, rng), std::nullopt, Algorithm::kQValue};
  const MarketState st = state_of({job(1, 0, 1, 1)});
  AgentLogBuilder b(0);
  b.record(st.jobs[0], 0, extract_features(st.jobs[0], st, FeatureScales::identity()), 2.0, 1.0);
  b.complete(1);
  EXPECT_THROW(update_learner(l, std::move(b).finish()), std::invalid_argument);
}

TEST(Learning, NonFiniteRewardDiverges) {
  Rng rng = make_stream(3, Stream::kShipperInit);
  Learner l{init_policy({}, 2.0, 0.5, {1e-2}, rng), std::nullopt, Algorithm::kPolicyGradient};
  const MarketState st = state_of({job(1, 0, 1, 1)});
  AgentLogBuilder b(0);
  b.record(st.jobs[0], 0, extract_features(st.jobs[0], st, FeatureScales::identity()), 2.0,
           std::numeric_limits<double>::infinity());
  b.complete(1);
  EXPECT_THROW(update_learner(l, std::move(b).finish()), DivergenceError);
}

TEST(Learning, DueClassBaselines) {
  const MarketState st = state_of({job(1, 2, 1, 1), job(2, 0, 1, 1)});
  const FeatureVector f = extract_features(st.jobs[0], st, FeatureScales::identity());
  AgentLogBuilder b(2);
  b.record(st.jobs[0], 0, f, 1.0, 3.0);
  b.record(st.jobs[1], 0, f, 1.0, 5.0);
  b.complete(1);
  b.complete(2);
  const auto base = due_class_baselines(std::move(b).finish());
  EXPECT_EQ(base, (std::vector<double>{5.0, 0.0, 3.0}));
}

TEST(EpisodeLog, OpenJobsAreDropped) {
  const MarketState st = state_of({job(1, 2, 1, 1), job(2, 2, 1, 1)});
  const FeatureVector f = extract_features(st.jobs[0], st, FeatureScales::identity());
  AgentLogBuilder b(2);
  b.record(st.jobs[0], 0, f, 1.0, -1.0);
  b.record(st.jobs[1], 0, f, 1.0, -1.0);
  ASSERT_NE(b.pending(2), nullptr);
  EXPECT_EQ(b.pending(2)->size(), 1u);
  EXPECT_EQ(b.pending(9), nullptr);
  b.complete(1);
  const AgentLog log = std::move(b).finish();
  ASSERT_EQ(log.observations.size(), 1u);
  EXPECT_EQ(log.observations[0].job, 1);
  EXPECT_EQ(log.completed, (std::vector<JobId>{1}));
}

TEST(Risk, ParseAppetite) {
  EXPECT_EQ(parse_risk_appetite("rs"), RiskAppetite::kSeeking);
  EXPECT_EQ(parse_risk_appetite("RN"), RiskAppetite::kNeutral);
  EXPECT_EQ(parse_risk_appetite("risk-averse"), RiskAppetite::kAverse);
  EXPECT_THROW(parse_risk_appetite("bold"), std::invalid_argument);
  EXPECT_EQ(short_name(RiskAppetite::kAverse), "RA");
}

TEST(Risk, ProfileHyperparameters) {
  const CaseConfig c1 = case_preset("case1");
  const RiskProfile rs = risk_profile(Role::kCarrier, RiskAppetite::kSeeking, c1);
  EXPECT_EQ(rs.learning_rate, 0.005);
  EXPECT_EQ(rs.penalty_slope, 2.0);
  const RiskProfile rn = risk_profile(Role::kShipper, RiskAppetite::kNeutral, c1);
  EXPECT_EQ(rn.learning_rate, 0.001);
  EXPECT_EQ(rn.penalty_slope, 1.0);
  const RiskProfile ra = risk_profile(Role::kShipper, RiskAppetite::kAverse, c1);
  EXPECT_EQ(ra.learning_rate, 0.0001);
  EXPECT_EQ(ra.penalty_slope, 2.0);
}

TEST(Risk, CaseTwoBiasesFollowAverages) {
  const CaseConfig c = case_preset("case2-cap300");
  const BiasPresets b = bias_presets(c);
  EXPECT_DOUBLE_EQ(risk_profile(Role::kCarrier, RiskAppetite::kSeeking, c).bias_init, b.avg_pay);
  EXPECT_DOUBLE_EQ(risk_profile(Role::kShipper, RiskAppetite::kSeeking, c).bias_init, b.avg_cost);
  EXPECT_DOUBLE_EQ(risk_profile(Role::kShipper, RiskAppetite::kNeutral, c).bias_init,
                   b.midpoint());
}

}  // namespace
}  // namespace freight
