#include "freight/episode_log.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <iterator>

namespace freight {

AgentLogBuilder::AgentLogBuilder(int max_due) {
  log_.completion_counts.assign(static_cast<std::size_t>(std::max(0, max_due)) + 1, 0);
}

const Observation& AgentLogBuilder::record(const Job& job, std::int64_t epoch,
                                           const FeatureVector& features, double price,
                                           double reward) {
  auto& trail = pending_[job.id];
  const double prior = trail.empty() ? 0.0 : trail.back().vhat;
  trail.push_back({job.id, epoch, job.due, features, price, reward, reward + prior});
  return trail.back();
}

void AgentLogBuilder::complete(JobId job) {
  auto it = pending_.find(job);
  if (it == pending_.end()) return;
  for (Observation& o : it->second) {
    const auto k = static_cast<std::size_t>(o.due);
    if (k >= log_.completion_counts.size()) log_.completion_counts.resize(k + 1, 0);
    ++log_.completion_counts[k];
    log_.observations.push_back(std::move(o));
  }
  log_.completed.push_back(job);
  pending_.erase(it);
}

const std::vector<Observation>* AgentLogBuilder::pending(JobId job) const {
  auto it = pending_.find(job);
  return it == pending_.end() ? nullptr : &it->second;
}

AgentLog AgentLogBuilder::finish() && { return std::move(log_); }

namespace {

void dump_agent(std::string& out, const char* name, const AgentLog& log) {
  auto it = std::back_inserter(out);
  fmt::format_to(it, "{} observations={} completed={}\n", name, log.observations.size(),
                 log.completed.size());
  for (const Observation& o : log.observations) {
    fmt::format_to(it, "  job={} epoch={} due={} price={:a} reward={:a} vhat={:a} f=", o.job,
                   o.epoch, o.due, o.price, o.reward, o.vhat);
    for (double f : o.features.values()) fmt::format_to(it, "{:a},", f);
    out.push_back('\n');
  }
  fmt::format_to(it, "  K=");
  for (auto k : log.completion_counts) fmt::format_to(it, "{},", k);
  out.push_back('\n');
}

}  // namespace

std::string EpisodeLog::serialize() const {
  std::string out;
  auto it = std::back_inserter(out);
  for (const EpochRecord& e : epochs) {
    fmt::format_to(it, "epoch {} jobs={}\n", e.state.epoch, e.state.jobs.size());
    for (std::size_t i = 0; i < e.state.jobs.size(); ++i) {
      const Job& j = e.state.jobs[i];
      fmt::format_to(it, "  {} due={} d={} v={} bid={:a} ask={:a} ship={}\n", j.id, j.due,
                     j.distance, j.volume, e.quotes.bids[i], e.quotes.asks[i],
                     e.allocation.shipped[i]);
    }
  }
  dump_agent(out, "shipper", shipper);
  dump_agent(out, "carrier", carrier);
  fmt::format_to(it, "broker_total={:a}\n", broker_total);
  return out;
}

}  // namespace freight
