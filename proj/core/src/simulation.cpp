#include "freight/simulation.hpp"

#include <cmath>
#include <fmt/format.h>

namespace freight {

namespace {

ActionSample quote(const Participant& p, const FeatureVector& features, const JobEconomics& econ) {
  if (p.script) {
    const double price = p.script->price(econ);
    return {price, price, 0.0};
  }
  if (!p.policy || !p.rng) throw std::invalid_argument("participant has neither policy nor script");
  ActionSample s = sample_action(*p.policy, features, *p.rng);
  if (!std::isfinite(s.price)) throw DivergenceError("non-finite price");
  return s;
}

JobOutcome outcome_of(const Job& job, const JobEconomics& econ, double bid, double ask,
                      bool shipped) {
  JobOutcome o;
  o.id = job.id;
  o.econ = econ;
  o.bid = bid;
  o.ask = ask;
  o.shipped = shipped;
  o.volume = job.volume;
  if (shipped) {
    o.shipper_reward = econ.max_pay - bid;
    o.carrier_reward = ask - econ.trn_cost;
  }
  return o;
}

}  // namespace

EpisodeLog run_episode(const CaseConfig& config, const FeatureScales& scales,
                       const Participant& shipper, const Participant& carrier, Rng& arrivals,
                       JobIdSource& ids, const EpisodeOptions& options) {
  EpisodeLog log;
  AgentLogBuilder shipper_log(config.max_due());
  AgentLogBuilder carrier_log(config.max_due());
  EpisodeMetricsAccumulator metrics;

  MarketState state;
  state.jobs = generate_arrivals(config, arrivals, ids, 0);

  std::vector<FeatureVector> features;
  std::vector<JobEconomics> econ;
  for (int day = 0; day < config.horizon_days; ++day) {
    const std::size_t n = state.size();
    QuoteSheet quotes;
    quotes.epoch = state.epoch;
    quotes.ids.resize(n);
    quotes.bids.resize(n);
    quotes.asks.resize(n);
    features.resize(n);
    econ.resize(n);
    std::vector<ActionSample> bids(n), asks(n);
    if (n > 0) {
      const StateSummary summary = summarize(state);
      for (std::size_t i = 0; i < n; ++i) {
        const Job& job = state.jobs[i];
        features[i] = extract_features(job, summary, scales);
        econ[i] = job_economics(job, config);
        bids[i] = quote(shipper, features[i], econ[i]);
        asks[i] = quote(carrier, features[i], econ[i]);
        quotes.ids[i] = job.id;
        quotes.bids[i] = bids[i].price;
        quotes.asks[i] = asks[i].price;
      }
    }

    Allocation allocation = allocate(state, quotes, config.capacity);
    const Allocation best_volume = max_volume_allocation(state, config.capacity);
    metrics.add_epoch(allocation.used_volume, best_volume.used_volume);
    log.broker_total += broker_reward(allocation, quotes);
    const int idle = config.capacity - allocation.used_volume;

    std::size_t survivors = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Job& job = state.jobs[i];
      const bool shipped = allocation.shipped[i] != 0;
      const double r_s = shipper_reward(shipped, bids[i].price, econ[i], shipper.penalty_slope);
      const double r_c =
          carrier_reward(shipped, asks[i].price, econ[i], carrier.penalty_slope, idle);
      shipper_log.record(job, state.epoch, features[i], bids[i].price, r_s);
      carrier_log.record(job, state.epoch, features[i], asks[i].price, r_c);
      metrics.add_quote(bids[i].mu, bids[i].sigma, bids[i].price, asks[i].mu, asks[i].sigma,
                        asks[i].price);
      if (shipped || job.due == 0) {
        log.outcomes.push_back(outcome_of(job, econ[i], bids[i].price, asks[i].price, shipped));
        metrics.add_outcome(log.outcomes.back());
      } else {
        ++survivors;
      }
    }

    const bool last_day = day + 1 == config.horizon_days;
    const std::vector<Job> arrived =
        last_day ? std::vector<Job>{} : generate_arrivals(config, arrivals, ids, survivors);
    TransitionResult next = transition(state, arrived, quotes.ids, allocation.shipped);
    for (const Job& j : next.shipped) {
      shipper_log.complete(j.id);
      carrier_log.complete(j.id);
    }
    for (const Job& j : next.failed) {
      shipper_log.complete(j.id);
      carrier_log.complete(j.id);
    }
    if (options.record_epochs) {
      log.epochs.push_back({std::move(state), std::move(quotes), std::move(allocation)});
    }
    state = std::move(next.next);
  }

  log.shipper = std::move(shipper_log).finish();
  log.carrier = std::move(carrier_log).finish();
  log.metrics = metrics.finish();
  return log;
}

std::optional<Learner> make_learner(const AgentConfig& agent, const CaseConfig& market,
                                    bool average_gradients, Rng& actor_init, Rng& critic_init) {
  if (!agent.learns()) return std::nullopt;
  AdamConfig adam;
  adam.learning_rate = agent.profile.learning_rate;
  Learner l{init_policy(agent.hidden_layers, agent.profile.bias_init, agent.profile.sigma_init,
                        adam, actor_init, agent.sigma_floor),
            std::nullopt, agent.algorithm, FeatureScales::for_case(market).action,
            average_gradients};
  if (uses_critic(agent.algorithm)) l.critic = init_critic(agent.critic_hidden_layers, adam, critic_init);
  return l;
}

ReplicationResult run_replication(const ExperimentConfig& config, int index,
                                  const RunOptions& options) {
  ReplicationResult r;
  r.index = index;
  r.seed = config.seed + static_cast<std::uint64_t>(index);

  Rng arrivals = make_stream(r.seed, Stream::kArrivals);
  Rng shipper_rng = make_stream(r.seed, Stream::kShipperPolicy);
  Rng carrier_rng = make_stream(r.seed, Stream::kCarrierPolicy);
  Rng shipper_init = make_stream(r.seed, Stream::kShipperInit);
  Rng carrier_init = make_stream(r.seed, Stream::kCarrierInit);
  Rng shipper_critic_init = make_stream(r.seed, Stream::kShipperCriticInit);
  Rng carrier_critic_init = make_stream(r.seed, Stream::kCarrierCriticInit);

  const CaseConfig& market = config.market;
  std::optional<Learner> shipper = make_learner(config.shipper, market, config.average_gradients,
                                                shipper_init, shipper_critic_init);
  std::optional<Learner> carrier = make_learner(config.carrier, market, config.average_gradients,
                                                carrier_init, carrier_critic_init);
  std::int64_t completed_before = 0;
  if (options.resume) {
    if (shipper && options.resume->shipper) shipper = options.resume->shipper;
    if (carrier && options.resume->carrier) carrier = options.resume->carrier;
    completed_before = options.resume->episodes_completed;
  }

  const FeatureScales scales = FeatureScales::for_case(market);
  Participant s{nullptr, config.shipper.frozen, config.shipper.profile.penalty_slope, &shipper_rng};
  Participant c{nullptr, config.carrier.frozen, config.carrier.profile.penalty_slope, &carrier_rng};
  JobIdSource ids;

  r.episodes.reserve(static_cast<std::size_t>(market.episodes));
  try {
    for (int m = 0; m < market.episodes; ++m) {
      s.policy = shipper ? &shipper->actor : nullptr;
      c.policy = carrier ? &carrier->actor : nullptr;
      EpisodeLog log = run_episode(market, scales, s, c, arrivals, ids);
      r.episodes.push_back(log.metrics);
      update_policies(shipper ? &*shipper : nullptr, carrier ? &*carrier : nullptr, log);
      if (options.on_progress) options.on_progress({index, m + 1, market.episodes});
    }
  } catch (const DivergenceError& e) {
    r.stable = false;
    r.failure = fmt::format("diverged in episode {}: {}", r.episodes.size(), e.what());
  }

  if (r.stable) r.report = summarize_episodes(r.episodes);
  r.final_models.episodes_completed =
      completed_before + static_cast<std::int64_t>(r.episodes.size());
  r.final_models.shipper = std::move(shipper);
  r.final_models.carrier = std::move(carrier);
  return r;
}

namespace {

PooledStat pooled_stat(const std::vector<double>& xs) {
  PooledStat s;
  s.count = static_cast<int>(xs.size());
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() >= 2) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stdev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

}  // namespace

std::array<PooledMetric, kMetricFields.size()> pool_replications(
    const std::vector<ReplicationResult>& replications) {
  std::array<PooledMetric, kMetricFields.size()> out;
  for (std::size_t i = 0; i < kMetricFields.size(); ++i) {
    std::vector<double> avg, end;
    for (const ReplicationResult& r : replications) {
      if (!r.stable) continue;
      const MetricSummary& m = r.report.values[i];
      if (!std::isnan(m.average)) avg.push_back(m.average);
      if (!std::isnan(m.end_of_horizon)) end.push_back(m.end_of_horizon);
    }
    out[i].average = pooled_stat(avg);
    out[i].end_of_horizon = pooled_stat(end);
  }
  return out;
}

int RunResult::unstable_count() const {
  int n = 0;
  for (const auto& r : replications) n += r.stable ? 0 : 1;
  return n;
}

const PooledMetric& RunResult::pooled_metric(std::string_view name) const {
  for (std::size_t i = 0; i < kMetricFields.size(); ++i) {
    if (kMetricFields[i].name == name) return pooled[i];
  }
  throw std::out_of_range(fmt::format("unknown metric '{}'", name));
}

RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  result.config = config;
  for (int i = 0; i < config.replications; ++i) {
    result.replications.push_back(run_replication(config, i, options));
  }
  result.pooled = pool_replications(result.replications);
  result.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace freight
