#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace missingnet {

/// Two-layer perceptron y = W2 tanh(W1 x + b1) + b2.
///
/// Parameters live in one flat vector laid out as [W1 | b1 | W2 | b2], with
/// W1 row-major (hidden x input) and W2 row-major (output x hidden). Gradients
/// use the same layout, which is what the optimizer works on.
class Mlp {
 public:
  Mlp() = default;
  /// Zero-initialised network.
  Mlp(std::size_t input_dim, std::size_t hidden_dim, std::size_t output_dim);

  /// Uniform initialisation in [-1/sqrt(fan_in), 1/sqrt(fan_in)] per layer.
  static Mlp random(std::size_t input_dim, std::size_t hidden_dim, std::size_t output_dim,
                    std::uint64_t seed);
  /// Square network with hidden_dim < dim.
  static Mlp autoencoder(std::size_t dim, std::size_t hidden_dim, std::uint64_t seed);

  std::size_t input_dim() const noexcept { return in_; }
  std::size_t hidden_dim() const noexcept { return hid_; }
  std::size_t output_dim() const noexcept { return out_; }
  std::size_t parameter_count() const noexcept { return params_.size(); }

  std::span<const double> parameters() const noexcept { return params_; }
  std::span<double> parameters() noexcept { return params_; }
  /// Throws invalid_input on a length mismatch or non-finite entry.
  void set_parameters(std::span<const double> values);

  double& w1(std::size_t j, std::size_t i) { return params_[j * in_ + i]; }
  double w1(std::size_t j, std::size_t i) const { return params_[j * in_ + i]; }
  double& b1(std::size_t j) { return params_[hid_ * in_ + j]; }
  double b1(std::size_t j) const { return params_[hid_ * in_ + j]; }
  double& w2(std::size_t k, std::size_t j) { return params_[w2_offset() + k * hid_ + j]; }
  double w2(std::size_t k, std::size_t j) const { return params_[w2_offset() + k * hid_ + j]; }
  double& b2(std::size_t k) { return params_[b2_offset() + k]; }
  double b2(std::size_t k) const { return params_[b2_offset() + k]; }

  std::vector<double> forward(std::span<const double> x) const;
  /// Allocation-free variant; `hidden` must hold hidden_dim values, `y` output_dim.
  void forward_into(std::span<const double> x, std::span<double> hidden, std::span<double> y) const;

 private:
  std::size_t w2_offset() const noexcept { return hid_ * in_ + hid_; }
  std::size_t b2_offset() const noexcept { return w2_offset() + out_ * hid_; }

  std::size_t in_ = 0, hid_ = 0, out_ = 0;
  std::vector<double> params_;
};

using Samples = std::span<const std::vector<double>>;

/// Sum over samples and outputs of the squared error.
double loss(const Mlp& net, Samples inputs, Samples targets);

/// Backpropagated gradient of `loss`, in the parameter layout of Mlp.
std::vector<double> gradient(const Mlp& net, Samples inputs, Samples targets);

/// loss divided by (samples x outputs).
double mean_squared_error(const Mlp& net, Samples inputs, Samples targets);

struct TrainConfig {
  std::size_t max_cycles = 1200;
  double gradient_tolerance = 1e-10;
  std::uint64_t seed = 0;
  double initial_lambda = 1e-6;
  double sigma = 1e-4;

  void validate() const;
};

struct TrainResult {
  Mlp net;
  std::vector<double> loss_trace;  // initial loss, then loss after each accepted step
  std::size_t cycles = 0;
  bool converged = false;          // gradient fell below tolerance
};

/// Moller's scaled conjugate gradient on `loss`, starting from `net`.
/// Throws divergence if a trial loss is not finite.
TrainResult train_scg(Mlp net, Samples inputs, Samples targets, const TrainConfig& config);

}  // namespace missingnet
