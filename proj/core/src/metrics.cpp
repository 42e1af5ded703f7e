#include "freight/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace freight {

double nash_adherence(const JobOutcome& o) {
  if (!o.shipped) return 0.0;
  const double gap = o.econ.max_pay - o.econ.trn_cost;
  const double captured = (o.ask - o.econ.trn_cost) + (o.econ.max_pay - o.bid);
  return std::clamp(captured / gap, 0.0, 1.0);
}

std::optional<double> fairness(const JobOutcome& o) {
  if (!o.shipped) return std::nullopt;
  const double carrier_gain = o.ask - o.econ.trn_cost;
  const double shipper_gain = o.econ.max_pay - o.bid;
  const double denom = carrier_gain + shipper_gain;
  if (denom == 0.0) return std::nullopt;
  return std::clamp(1.0 - std::abs((carrier_gain - shipper_gain) / denom), 0.0, 1.0);
}

double relative_utilization(const MarketState& state, const Allocation& allocation, int capacity) {
  const int best = max_volume_allocation(state, capacity).used_volume;
  if (best == 0) return 1.0;
  int used = 0;
  for (std::size_t i = 0; i < state.jobs.size(); ++i) {
    if (allocation.shipped[i]) used += state.jobs[i].volume;
  }
  return static_cast<double>(used) / best;
}

RewardShares reward_shares(std::span<const JobOutcome> outcomes) {
  double shipped_gap = 0.0, all_gap = 0.0;
  double s = 0.0, c = 0.0, b = 0.0;
  double net_s = 0.0, net_c = 0.0;
  for (const JobOutcome& o : outcomes) {
    const double gap = o.econ.max_pay - o.econ.trn_cost;
    all_gap += gap;
    net_s += o.shipper_reward;
    net_c += o.carrier_reward;
    if (!o.shipped) continue;
    shipped_gap += gap;
    s += o.econ.max_pay - o.bid;
    c += o.ask - o.econ.trn_cost;
    b += o.bid - o.ask;
  }
  RewardShares out;
  if (shipped_gap > 0.0) {
    out.shipper = s / shipped_gap;
    out.carrier = c / shipped_gap;
    out.broker = b / shipped_gap;
  }
  if (all_gap > 0.0) {
    out.net_shipper = net_s / all_gap;
    out.net_carrier = net_c / all_gap;
    out.net_broker = b / all_gap;
  }
  return out;
}

void EpisodeMetricsAccumulator::add_epoch(int shipped_volume, int max_shippable_volume) {
  shipped_volume_ += shipped_volume;
  max_volume_ += max_shippable_volume;
}

void EpisodeMetricsAccumulator::add_quote(double mu_shipper, double sigma_shipper, double bid,
                                          double mu_carrier, double sigma_carrier, double ask) {
  ++quotes_;
  mu_s_ += mu_shipper;
  sigma_s_ += sigma_shipper;
  bid_ += bid;
  mu_c_ += mu_carrier;
  sigma_c_ += sigma_carrier;
  ask_ += ask;
}

void EpisodeMetricsAccumulator::add_outcome(const JobOutcome& outcome) {
  outcomes_.push_back(outcome);
}

EpisodeMetrics EpisodeMetricsAccumulator::finish() const {
  EpisodeMetrics m;
  m.utilization =
      max_volume_ == 0 ? 1.0 : static_cast<double>(shipped_volume_) / static_cast<double>(max_volume_);

  double adherence = 0.0, fair = 0.0;
  std::int64_t fair_n = 0;
  for (const JobOutcome& o : outcomes_) {
    adherence += nash_adherence(o);
    if (auto f = fairness(o)) {
      fair += *f;
      ++fair_n;
    } else if (o.shipped) {
      ++m.fairness_excluded;
    }
    (o.shipped ? m.shipped : m.failed) += 1;
  }
  if (!outcomes_.empty()) m.nash_adherence = adherence / static_cast<double>(outcomes_.size());
  if (fair_n > 0) m.fairness = fair / static_cast<double>(fair_n);

  const RewardShares shares = reward_shares(outcomes_);
  m.share_shipper = shares.shipper.value_or(kNotAvailable);
  m.share_carrier = shares.carrier.value_or(kNotAvailable);
  m.share_broker = shares.broker.value_or(kNotAvailable);
  m.net_shipper = shares.net_shipper.value_or(kNotAvailable);
  m.net_carrier = shares.net_carrier.value_or(kNotAvailable);
  m.net_broker = shares.net_broker.value_or(kNotAvailable);

  if (quotes_ > 0) {
    const auto n = static_cast<double>(quotes_);
    m.mu_shipper = mu_s_ / n;
    m.sigma_shipper = sigma_s_ / n;
    m.mean_bid = bid_ / n;
    m.mu_carrier = mu_c_ / n;
    m.sigma_carrier = sigma_c_ / n;
    m.mean_ask = ask_ / n;
  }
  return m;
}

const MetricSummary& MetricsReport::operator[](std::string_view name) const {
  for (std::size_t i = 0; i < kMetricFields.size(); ++i) {
    if (kMetricFields[i].name == name) return values[i];
  }
  throw std::out_of_range(fmt::format("unknown metric '{}'", name));
}

std::size_t warmup_episodes(std::size_t episodes) { return episodes / 10; }

std::size_t end_window_episodes(std::size_t episodes) {
  return std::max<std::size_t>(1, (episodes + 19) / 20);
}

namespace {

double nan_mean(std::span<const EpisodeMetrics> rows, double EpisodeMetrics::*member) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const EpisodeMetrics& r : rows) {
    const double x = r.*member;
    if (std::isnan(x)) continue;
    sum += x;
    ++n;
  }
  return n == 0 ? kNotAvailable : sum / static_cast<double>(n);
}

}  // namespace

MetricsReport summarize_episodes(std::span<const EpisodeMetrics> rows) {
  MetricsReport report;
  if (rows.empty()) return report;
  const auto after_warmup = rows.subspan(warmup_episodes(rows.size()));
  const auto end_window = rows.last(std::min(rows.size(), end_window_episodes(rows.size())));
  for (std::size_t i = 0; i < kMetricFields.size(); ++i) {
    report.values[i].average = nan_mean(after_warmup, kMetricFields[i].member);
    report.values[i].end_of_horizon = nan_mean(end_window, kMetricFields[i].member);
  }
  return report;
}

}  // namespace freight
