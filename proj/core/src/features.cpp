#include "freight/features.hpp"

#include <algorithm>
#include <stdexcept>

namespace freight {

FeatureVector FeatureVector::with_action(double scaled_action) const {
  FeatureVector out = *this;
  out.push_back(scaled_action);
  return out;
}

StateSummary summarize(const MarketState& state) {
  StateSummary s;
  if (state.jobs.empty()) return s;
  double due = 0.0, dist = 0.0, vol = 0.0;
  for (const Job& j : state.jobs) {
    due += j.due;
    dist += j.distance;
    vol += j.volume;
  }
  const auto n = static_cast<double>(state.jobs.size());
  s.mean_due = due / n;
  s.mean_distance = dist / n;
  s.mean_volume = vol / n;
  s.total_volume = vol;
  s.job_count = n;
  return s;
}

FeatureScales FeatureScales::for_case(const CaseConfig& config) {
  FeatureScales s;
  // Case I has due dates fixed at 0; keep the divisor positive.
  s.due = std::max(1, config.max_due());
  s.distance = config.max_distance();
  s.volume = config.max_volume();
  s.total_volume = static_cast<double>(config.max_open_jobs) * config.max_volume();
  s.job_count = config.max_open_jobs;
  s.action = config.distance_range.mean() * config.volume_range.mean() * config.willingness_rate;
  return s;
}

FeatureVector extract_features(const Job& job, const StateSummary& summary,
                               const FeatureScales& scales, std::optional<double> action) {
  FeatureVector f;
  f.push_back(1.0);
  f.push_back(job.due / scales.due);
  f.push_back(job.distance / scales.distance);
  f.push_back(job.volume / scales.volume);
  f.push_back(summary.mean_due / scales.due);
  f.push_back(summary.mean_distance / scales.distance);
  f.push_back(summary.mean_volume / scales.volume);
  f.push_back(summary.total_volume / scales.total_volume);
  f.push_back(summary.job_count / scales.job_count);
  if (action) f.push_back(*action / scales.action);
  return f;
}

FeatureVector extract_features(const Job& job, const MarketState& state,
                               const FeatureScales& scales, std::optional<double> action) {
  if (state.jobs.empty()) {
    throw std::invalid_argument("extract_features: empty market state");
  }
  return extract_features(job, summarize(state), scales, action);
}

}  // namespace freight
