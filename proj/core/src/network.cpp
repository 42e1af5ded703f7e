#include "freight/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace freight {

DenseNetwork::DenseNetwork(std::vector<std::size_t> layer_sizes) : sizes_(std::move(layer_sizes)) {
  if (sizes_.size() < 2) throw std::invalid_argument("DenseNetwork: need input and output sizes");
  if (std::find(sizes_.begin(), sizes_.end(), std::size_t{0}) != sizes_.end()) {
    throw std::invalid_argument("DenseNetwork: zero-width layer");
  }
  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    offsets_.push_back(total);
    total += sizes_[l] * sizes_[l + 1] + sizes_[l + 1];
  }
  params_.assign(total, 0.0);
}

double& DenseNetwork::weight(std::size_t layer, std::size_t out, std::size_t in) {
  return params_[weight_offset(layer) + out * sizes_[layer] + in];
}
double& DenseNetwork::bias(std::size_t layer, std::size_t out) {
  return params_[bias_offset(layer) + out];
}
double DenseNetwork::weight(std::size_t layer, std::size_t out, std::size_t in) const {
  return params_[weight_offset(layer) + out * sizes_[layer] + in];
}
double DenseNetwork::bias(std::size_t layer, std::size_t out) const {
  return params_[bias_offset(layer) + out];
}

void DenseNetwork::forward(std::span<const double> input, Trace& trace) const {
  if (input.size() != input_size()) {
    throw std::invalid_argument("DenseNetwork::forward: input size mismatch");
  }
  trace.activations.resize(sizes_.size());
  trace.activations[0].assign(input.begin(), input.end());
  for (std::size_t l = 0; l < num_layers(); ++l) {
    const std::size_t n_in = sizes_[l];
    const std::size_t n_out = sizes_[l + 1];
    const bool hidden = l + 1 < num_layers();
    const double* w = params_.data() + weight_offset(l);
    const double* b = params_.data() + bias_offset(l);
    const std::vector<double>& x = trace.activations[l];
    std::vector<double>& y = trace.activations[l + 1];
    y.resize(n_out);
    for (std::size_t o = 0; o < n_out; ++o) {
      double z = b[o];
      const double* row = w + o * n_in;
      for (std::size_t i = 0; i < n_in; ++i) z += row[i] * x[i];
      y[o] = hidden ? std::max(0.0, z) : z;
    }
  }
}

std::vector<double> DenseNetwork::forward(std::span<const double> input) const {
  Trace t;
  forward(input, t);
  return std::move(t.activations.back());
}

void DenseNetwork::backward(const Trace& trace, std::span<const double> output_grad,
                            std::span<double> grad) const {
  if (grad.size() != params_.size() || output_grad.size() != output_size()) {
    throw std::invalid_argument("DenseNetwork::backward: size mismatch");
  }
  std::vector<double> delta(output_grad.begin(), output_grad.end());
  std::vector<double> prev;
  for (std::size_t l = num_layers(); l-- > 0;) {
    const std::size_t n_in = sizes_[l];
    const std::size_t n_out = sizes_[l + 1];
    const std::vector<double>& x = trace.activations[l];
    double* gw = grad.data() + weight_offset(l);
    double* gb = grad.data() + bias_offset(l);
    for (std::size_t o = 0; o < n_out; ++o) {
      const double d = delta[o];
      if (d == 0.0) continue;
      gb[o] += d;
      double* row = gw + o * n_in;
      for (std::size_t i = 0; i < n_in; ++i) row[i] += d * x[i];
    }
    if (l == 0) break;
    // Propagate into the previous (ReLU) layer; a zero activation means the
    // unit was inactive.
    const double* w = params_.data() + weight_offset(l);
    prev.assign(n_in, 0.0);
    for (std::size_t o = 0; o < n_out; ++o) {
      const double d = delta[o];
      if (d == 0.0) continue;
      const double* row = w + o * n_in;
      for (std::size_t i = 0; i < n_in; ++i) prev[i] += d * row[i];
    }
    for (std::size_t i = 0; i < n_in; ++i) {
      if (x[i] <= 0.0) prev[i] = 0.0;
    }
    delta.swap(prev);
  }
}

}  // namespace freight
