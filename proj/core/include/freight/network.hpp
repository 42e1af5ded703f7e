#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace freight {

/// Fully connected feed-forward network: ReLU hidden layers, linear output.
///
/// All parameters live in one flat buffer, layer by layer, each layer as a
/// row-major (out x in) weight block followed by its `out` biases. Gradients
/// use the same layout, so optimizers and finite-difference checks can treat
/// the model as a plain vector.
class DenseNetwork {
 public:
  /// `layer_sizes` = {inputs, hidden..., outputs}; at least two entries.
  explicit DenseNetwork(std::vector<std::size_t> layer_sizes);

  /// Per-layer activations from one forward pass; index 0 is the input.
  struct Trace {
    std::vector<std::vector<double>> activations;
    std::span<const double> output() const { return activations.back(); }
  };

  void forward(std::span<const double> input, Trace& trace) const;
  std::vector<double> forward(std::span<const double> input) const;

  /// Accumulates d(loss)/d(params) into `grad` given d(loss)/d(output).
  void backward(const Trace& trace, std::span<const double> output_grad,
                std::span<double> grad) const;

  const std::vector<std::size_t>& layer_sizes() const { return sizes_; }
  std::size_t num_layers() const { return sizes_.size() - 1; }
  std::size_t input_size() const { return sizes_.front(); }
  std::size_t output_size() const { return sizes_.back(); }
  std::size_t num_params() const { return params_.size(); }

  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  double& weight(std::size_t layer, std::size_t out, std::size_t in);
  double& bias(std::size_t layer, std::size_t out);
  double weight(std::size_t layer, std::size_t out, std::size_t in) const;
  double bias(std::size_t layer, std::size_t out) const;

 private:
  std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const {
    return offsets_[layer] + sizes_[layer] * sizes_[layer + 1];
  }

  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;
  std::vector<double> params_;
};

}  // namespace freight
