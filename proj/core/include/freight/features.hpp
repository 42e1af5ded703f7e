#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>

#include "freight/market.hpp"

namespace freight {

inline constexpr std::size_t kActorFeatures = 9;
inline constexpr std::size_t kCriticFeatures = kActorFeatures + 1;

/// Job-level and state-level attributes fed to the networks:
/// bias, due, distance, volume, mean due, mean distance, mean volume,
/// total volume, job count, and (critic only) the quoted price.
class FeatureVector {
 public:
  FeatureVector() = default;

  std::size_t size() const { return size_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return {values_.data(), size_}; }

  void push_back(double x) { values_[size_++] = x; }
  /// Copy with the action feature appended.
  FeatureVector with_action(double scaled_action) const;

  friend bool operator==(const FeatureVector& a, const FeatureVector& b) {
    return a.size_ == b.size_ && a.values_ == b.values_;
  }

 private:
  std::array<double, kCriticFeatures> values_{};
  std::size_t size_ = 0;
};

/// Aggregates over the open jobs, computed once per epoch.
struct StateSummary {
  double mean_due = 0.0;
  double mean_distance = 0.0;
  double mean_volume = 0.0;
  double total_volume = 0.0;
  double job_count = 0.0;
};

StateSummary summarize(const MarketState& state);

/// Static divisors applied to every non-bias feature.
struct FeatureScales {
  double due = 1.0;
  double distance = 1.0;
  double volume = 1.0;
  double total_volume = 1.0;
  double job_count = 1.0;
  double action = 1.0;

  /// Identity scaling: raw feature values.
  static FeatureScales identity() { return {}; }
  /// Maxima implied by the case: due, distance, volume, max_open_jobs *
  /// max volume, max_open_jobs; prices are divided by the average maximum pay.
  static FeatureScales for_case(const CaseConfig& config);
};

FeatureVector extract_features(const Job& job, const StateSummary& summary,
                               const FeatureScales& scales,
                               std::optional<double> action = std::nullopt);

/// Convenience overload; throws std::invalid_argument on an empty state.
FeatureVector extract_features(const Job& job, const MarketState& state,
                               const FeatureScales& scales,
                               std::optional<double> action = std::nullopt);

}  // namespace freight
