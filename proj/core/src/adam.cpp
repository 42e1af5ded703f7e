#include "freight/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace freight {

AdamOptimizer::AdamOptimizer(AdamConfig config, std::size_t num_params)
    : config_(config), m_(num_params, 0.0), v_(num_params, 0.0) {
  if (!(config.learning_rate > 0.0)) throw std::invalid_argument("ADAM: learning rate must be > 0");
}

void AdamOptimizer::step(std::span<double> params, std::span<const double> grad) {
  if (params.size() != m_.size() || grad.size() != m_.size()) {
    throw std::invalid_argument("ADAM: parameter/gradient size mismatch");
  }
  ++steps_;
  const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(steps_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = config_.beta1 * m_[i] + (1.0 - config_.beta1) * grad[i];
    v_[i] = config_.beta2 * v_[i] + (1.0 - config_.beta2) * grad[i] * grad[i];
    const double m_hat = m_[i] / c1;
    const double v_hat = v_[i] / c2;
    params[i] -= config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.epsilon);
  }
}

void AdamOptimizer::restore(std::int64_t steps, std::vector<double> m, std::vector<double> v) {
  if (m.size() != m_.size() || v.size() != v_.size()) {
    throw std::invalid_argument("ADAM: restored moment size mismatch");
  }
  steps_ = steps;
  m_ = std::move(m);
  v_ = std::move(v);
}

}  // namespace freight
