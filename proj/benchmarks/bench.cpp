#include <benchmark/benchmark.h>

#include "freight/broker.hpp"
#include "freight/simulation.hpp"

namespace {

using namespace freight;

std::pair<MarketState, QuoteSheet> full_market(int jobs) {
  const CaseConfig c = case_preset("case2-cap40");
  Rng rng = make_stream(1, Stream::kArrivals);
  MarketState s;
  QuoteSheet q;
  for (int i = 0; i < jobs; ++i) {
    Job j{i, uniform_int(rng, 0, 5), uniform_int(rng, 1, 5), uniform_int(rng, 1, 5), 0};
    const JobEconomics e = job_economics(j, c);
    s.jobs.push_back(j);
    q.ids.push_back(j.id);
    q.asks.push_back(e.trn_cost + uniform_open01(rng) * e.surplus());
    q.bids.push_back(e.trn_cost + uniform_open01(rng) * e.surplus());
  }
  return {s, q};
}

void BM_Allocate(benchmark::State& state) {
  const auto [s, q] = full_market(static_cast<int>(state.range(0)));
  const int capacity = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(allocate(s, q, capacity));
}
BENCHMARK(BM_Allocate)->Args({1, 1})->Args({50, 40})->Args({50, 300});

void BM_MaxVolume(benchmark::State& state) {
  const auto [s, q] = full_market(50);
  const int capacity = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(max_volume_allocation(s, capacity));
}
BENCHMARK(BM_MaxVolume)->Arg(40)->Arg(300);

void BM_ActorForwardBackward(benchmark::State& state) {
  Rng init = make_stream(1, Stream::kShipperInit);
  const PolicyModel p = init_policy({20}, 2.0, 0.1, {}, init);
  const auto [s, q] = full_market(50);
  const FeatureVector f = extract_features(s.jobs[0], s, FeatureScales::for_case(case_preset("case2-cap40")));
  std::vector<double> grad(p.network().num_params(), 0.0);
  const std::vector<double> out_grad{1.0, 0.5};
  DenseNetwork::Trace trace;
  for (auto _ : state) {
    p.network().forward(f.values(), trace);
    p.network().backward(trace, out_grad, grad);
    benchmark::DoNotOptimize(grad.data());
  }
}
BENCHMARK(BM_ActorForwardBackward);

void BM_Episode(benchmark::State& state) {
  ExperimentConfig c = preset(state.range(0) == 0 ? "case1-tuned" : "case2-cap40-ra-rnbias");
  c.market.horizon_days = 1000;
  Rng i1 = make_stream(1, Stream::kShipperInit), i2 = make_stream(1, Stream::kCarrierInit);
  auto shipper = make_learner(c.shipper, c.market, false, i1, i1);
  auto carrier = make_learner(c.carrier, c.market, false, i2, i2);
  Rng sr = make_stream(1, Stream::kShipperPolicy), cr = make_stream(1, Stream::kCarrierPolicy);
  Rng arrivals = make_stream(1, Stream::kArrivals);
  const Participant s{&shipper->actor, std::nullopt, c.shipper.profile.penalty_slope, &sr};
  const Participant k{&carrier->actor, std::nullopt, c.carrier.profile.penalty_slope, &cr};
  const FeatureScales scales = FeatureScales::for_case(c.market);
  JobIdSource ids;
  for (auto _ : state) {
    EpisodeLog log = run_episode(c.market, scales, s, k, arrivals, ids);
    update_policies(&*shipper, &*carrier, log);
  }
}
BENCHMARK(BM_Episode)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
