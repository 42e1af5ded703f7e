#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace freight {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// ADAM with bias-corrected moments. Minimises: params -= lr * m_hat / (sqrt(v_hat) + eps).
class AdamOptimizer {
 public:
  AdamOptimizer() = default;
  AdamOptimizer(AdamConfig config, std::size_t num_params);

  void step(std::span<double> params, std::span<const double> grad);

  const AdamConfig& config() const { return config_; }
  AdamConfig& config() { return config_; }
  std::int64_t steps() const { return steps_; }
  const std::vector<double>& first_moment() const { return m_; }
  const std::vector<double>& second_moment() const { return v_; }

  /// Restores optimizer state (checkpoint loading).
  void restore(std::int64_t steps, std::vector<double> m, std::vector<double> v);

 private:
  AdamConfig config_;
  std::int64_t steps_ = 0;
  std::vector<double> m_;
  std::vector<double> v_;
};

}  // namespace freight
