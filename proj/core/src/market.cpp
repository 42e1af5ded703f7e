#include "freight/market.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <stdexcept>
#include <unordered_set>

namespace freight {

namespace {

void require(bool ok, std::string_view what) {
  if (!ok) throw std::invalid_argument(fmt::format("invalid case config: {}", what));
}

void require_range(const IntRange& r, int min_lo, std::string_view what) {
  require(r.lo <= r.hi, fmt::format("{} range [{}, {}] is empty", what, r.lo, r.hi));
  require(r.lo >= min_lo, fmt::format("{} range must start at >= {}", what, min_lo));
}

}  // namespace

int MarketState::total_volume() const {
  int total = 0;
  for (const Job& j : jobs) total += j.volume;
  return total;
}

void CaseConfig::validate() const {
  require_range(arrivals_per_day, 0, "arrivals_per_day");
  require_range(due_range, 0, "due");
  require_range(distance_range, 1, "distance");
  require_range(volume_range, 1, "volume");
  require(willingness_rate > 0.0 && transport_rate > 0.0, "rates must be positive");
  require(transport_rate < willingness_rate,
          "transport_rate must be below willingness_rate (empty feasibility set)");
  require(capacity >= volume_range.hi, "capacity must fit the largest job");
  require(max_open_jobs >= 1, "max_open_jobs must be positive");
  require(horizon_days >= 1, "horizon_days must be positive");
  require(episodes >= 1, "episodes must be positive");
}

CaseConfig case_preset(std::string_view name) {
  CaseConfig c;
  if (name == "case1") {
    c.name = "case1";
    return c;
  }
  if (name == "case2-cap40" || name == "case2-cap300") {
    c.name = std::string(name);
    c.arrivals_per_day = {1, 10};
    c.due_range = {1, 5};
    c.distance_range = {1, 5};
    c.volume_range = {1, 5};
    c.capacity = name == "case2-cap40" ? 40 : 300;
    c.max_open_jobs = 50;
    return c;
  }
  throw std::invalid_argument(
      fmt::format("unknown case preset '{}' (available: case1, case2-cap40, case2-cap300)", name));
}

std::vector<std::string> case_preset_names() { return {"case1", "case2-cap40", "case2-cap300"}; }

JobEconomics job_economics(const Job& job, const CaseConfig& config) {
  const double size = static_cast<double>(job.volume) * job.distance;
  return {config.willingness_rate * size, config.transport_rate * size};
}

std::vector<Job> generate_arrivals(const CaseConfig& config, Rng& rng, JobIdSource& ids,
                                   std::size_t open_jobs) {
  const int drawn = uniform_int(rng, config.arrivals_per_day.lo, config.arrivals_per_day.hi);
  const auto room = open_jobs >= static_cast<std::size_t>(config.max_open_jobs)
                        ? std::size_t{0}
                        : static_cast<std::size_t>(config.max_open_jobs) - open_jobs;
  const auto count = std::min(static_cast<std::size_t>(drawn), room);

  std::vector<Job> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Job j;
    j.id = ids.next();
    j.due = uniform_int(rng, config.due_range.lo, config.due_range.hi);
    j.distance = uniform_int(rng, config.distance_range.lo, config.distance_range.hi);
    j.volume = uniform_int(rng, config.volume_range.lo, config.volume_range.hi);
    j.born_due = j.due;
    out.push_back(j);
  }
  return out;
}

double shipper_reward(bool shipped, double bid, const JobEconomics& econ, double penalty_slope) {
  if (shipped) return econ.max_pay - bid;
  return -penalty_slope * std::max(0.0, econ.max_pay - bid);
}

double carrier_reward(bool shipped, double ask, const JobEconomics& econ, double penalty_slope,
                      int idle_capacity) {
  if (shipped) return ask - econ.trn_cost;
  if (ask > econ.trn_cost && idle_capacity > 0) {
    return -penalty_slope * std::max(0.0, ask - econ.trn_cost);
  }
  return 0.0;
}

TransitionResult transition(const MarketState& state, std::span<const Job> arrivals,
                            std::span<const JobId> flag_ids,
                            std::span<const std::uint8_t> shipped_flags) {
  if (flag_ids.size() != state.jobs.size() || shipped_flags.size() != state.jobs.size()) {
    throw std::invalid_argument(
        fmt::format("transition: allocation covers {} jobs, state has {}", shipped_flags.size(),
                    state.jobs.size()));
  }
  TransitionResult out;
  out.next.epoch = state.epoch + 1;
  out.next.jobs.reserve(state.jobs.size() + arrivals.size());
  for (std::size_t i = 0; i < state.jobs.size(); ++i) {
    const Job& j = state.jobs[i];
    if (flag_ids[i] != j.id) {
      throw std::invalid_argument(
          fmt::format("transition: allocation has no entry for job {}", j.id));
    }
    if (shipped_flags[i]) {
      out.shipped.push_back(j);
    } else if (j.due == 0) {
      out.failed.push_back(j);
    } else {
      Job aged = j;
      --aged.due;
      out.next.jobs.push_back(aged);
    }
  }
  out.next.jobs.insert(out.next.jobs.end(), arrivals.begin(), arrivals.end());
  return out;
}

}  // namespace freight
