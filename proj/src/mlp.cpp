#include "missingnet/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "missingnet/error.hpp"
#include "missingnet/rng.hpp"

namespace missingnet {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_samples(const Mlp& net, Samples inputs, Samples targets) {
  require(inputs.size() == targets.size(), "inputs and targets differ in length");
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    require(inputs[s].size() == net.input_dim(), "input dimension mismatch");
    require(targets[s].size() == net.output_dim(), "target dimension mismatch");
  }
}

}  // namespace

Mlp::Mlp(std::size_t input_dim, std::size_t hidden_dim, std::size_t output_dim)
    : in_(input_dim), hid_(hidden_dim), out_(output_dim) {
  require(in_ >= 1 && hid_ >= 1 && out_ >= 1, "network dimensions must be positive");
  params_.assign(hid_ * in_ + hid_ + out_ * hid_ + out_, 0.0);
}

Mlp Mlp::random(std::size_t input_dim, std::size_t hidden_dim, std::size_t output_dim,
                std::uint64_t seed) {
  Mlp net(input_dim, hidden_dim, output_dim);
  Rng rng(seed);
  const double r1 = 1.0 / std::sqrt(static_cast<double>(input_dim));
  const double r2 = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
  std::uniform_real_distribution<double> first(-r1, r1), second(-r2, r2);
  const std::size_t split = net.w2_offset();
  for (std::size_t p = 0; p < net.params_.size(); ++p)
    net.params_[p] = p < split ? first(rng) : second(rng);
  return net;
}

Mlp Mlp::autoencoder(std::size_t dim, std::size_t hidden_dim, std::uint64_t seed) {
  require(hidden_dim < dim, "autoencoder bottleneck must be narrower than its input");
  return random(dim, hidden_dim, dim, seed);
}

void Mlp::set_parameters(std::span<const double> values) {
  require(values.size() == params_.size(), "parameter vector has the wrong length");
  for (double v : values) require(std::isfinite(v), "network parameters must be finite");
  std::copy(values.begin(), values.end(), params_.begin());
}

void Mlp::forward_into(std::span<const double> x, std::span<double> hidden,
                       std::span<double> y) const {
  for (std::size_t j = 0; j < hid_; ++j) {
    const double* row = &params_[j * in_];
    double a = b1(j);
    for (std::size_t i = 0; i < in_; ++i) a += row[i] * x[i];
    hidden[j] = std::tanh(a);
  }
  for (std::size_t k = 0; k < out_; ++k) {
    const double* row = &params_[w2_offset() + k * hid_];
    double a = b2(k);
    for (std::size_t j = 0; j < hid_; ++j) a += row[j] * hidden[j];
    y[k] = a;
  }
}

std::vector<double> Mlp::forward(std::span<const double> x) const {
  require(x.size() == in_, "network input has dimension " + std::to_string(x.size()) +
                               ", expected " + std::to_string(in_));
  std::vector<double> hidden(hid_), y(out_);
  forward_into(x, hidden, y);
  return y;
}

double loss(const Mlp& net, Samples inputs, Samples targets) {
  check_samples(net, inputs, targets);
  std::vector<double> hidden(net.hidden_dim()), y(net.output_dim());
  double total = 0.0;
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    net.forward_into(inputs[s], hidden, y);
    for (std::size_t k = 0; k < y.size(); ++k) {
      const double e = y[k] - targets[s][k];
      total += e * e;
    }
  }
  return total;
}

double mean_squared_error(const Mlp& net, Samples inputs, Samples targets) {
  require(!inputs.empty(), "mean squared error of no samples");
  return loss(net, inputs, targets) /
         static_cast<double>(inputs.size() * net.output_dim());
}

std::vector<double> gradient(const Mlp& net, Samples inputs, Samples targets) {
  check_samples(net, inputs, targets);
  const std::size_t in = net.input_dim(), hid = net.hidden_dim(), out = net.output_dim();
  std::vector<double> grad(net.parameter_count(), 0.0);
  double* g_w1 = grad.data();
  double* g_b1 = g_w1 + hid * in;
  double* g_w2 = g_b1 + hid;
  double* g_b2 = g_w2 + out * hid;

  std::vector<double> hidden(hid), y(out), delta_out(out), delta_hid(hid);
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    const std::vector<double>& x = inputs[s];
    net.forward_into(x, hidden, y);
    for (std::size_t k = 0; k < out; ++k) delta_out[k] = 2.0 * (y[k] - targets[s][k]);
    for (std::size_t j = 0; j < hid; ++j) {
      double back = 0.0;
      for (std::size_t k = 0; k < out; ++k) back += net.w2(k, j) * delta_out[k];
      delta_hid[j] = back * (1.0 - hidden[j] * hidden[j]);
    }
    for (std::size_t k = 0; k < out; ++k) {
      g_b2[k] += delta_out[k];
      for (std::size_t j = 0; j < hid; ++j) g_w2[k * hid + j] += delta_out[k] * hidden[j];
    }
    for (std::size_t j = 0; j < hid; ++j) {
      g_b1[j] += delta_hid[j];
      for (std::size_t i = 0; i < in; ++i) g_w1[j * in + i] += delta_hid[j] * x[i];
    }
  }
  return grad;
}

void TrainConfig::validate() const {
  require(max_cycles >= 1, "max_cycles must be at least 1");
  require(gradient_tolerance > 0.0, "gradient tolerance must be positive");
  require(initial_lambda > 0.0 && sigma > 0.0, "SCG lambda and sigma must be positive");
}

TrainResult train_scg(Mlp net, Samples inputs, Samples targets, const TrainConfig& config) {
  config.validate();
  require(!inputs.empty(), "training needs at least one sample");
  check_samples(net, inputs, targets);

  const std::size_t n = net.parameter_count();
  constexpr double lambda_min = 1e-15;
  constexpr double lambda_max = 1e100;

  std::vector<double> w(net.parameters().begin(), net.parameters().end());
  Mlp probe = net;
  auto loss_at = [&](std::span<const double> p) {
    std::copy(p.begin(), p.end(), probe.parameters().begin());
    return loss(probe, inputs, targets);
  };
  auto grad_at = [&](std::span<const double> p) {
    std::copy(p.begin(), p.end(), probe.parameters().begin());
    return gradient(probe, inputs, targets);
  };

  TrainResult result;
  double f_old = loss_at(w);
  if (!std::isfinite(f_old)) fail(ErrorCategory::divergence, "initial loss is not finite");
  result.loss_trace.push_back(f_old);

  std::vector<double> g_new = grad_at(w), g_old;
  const double tol2 = config.gradient_tolerance * config.gradient_tolerance;
  if (dot(g_new, g_new) <= tol2) {
    result.net = std::move(net);
    result.converged = true;
    return result;
  }

  std::vector<double> d(n), w_trial(n);
  for (std::size_t p = 0; p < n; ++p) d[p] = -g_new[p];

  double lambda = config.initial_lambda;
  bool success = true;
  std::size_t successes = 0;
  double mu = 0.0, kappa = 0.0, theta = 0.0;

  for (std::size_t cycle = 1; cycle <= config.max_cycles; ++cycle) {
    result.cycles = cycle;
    if (success) {
      mu = dot(d, g_new);
      if (mu >= 0.0) {
        for (std::size_t p = 0; p < n; ++p) d[p] = -g_new[p];
        mu = dot(d, g_new);
      }
      kappa = dot(d, d);
      if (kappa < std::numeric_limits<double>::epsilon()) {
        result.converged = true;
        break;
      }
      // Curvature along d from a finite difference of gradients.
      const double sigma = config.sigma / std::sqrt(kappa);
      for (std::size_t p = 0; p < n; ++p) w_trial[p] = w[p] + sigma * d[p];
      const std::vector<double> g_plus = grad_at(w_trial);
      theta = 0.0;
      for (std::size_t p = 0; p < n; ++p) theta += d[p] * (g_plus[p] - g_new[p]);
      theta /= sigma;
    }

    double delta = theta + lambda * kappa;
    if (delta <= 0.0) {
      // Force the scaled Hessian positive definite.
      delta = lambda * kappa;
      lambda -= theta / kappa;
    }
    const double step = -mu / delta;
    for (std::size_t p = 0; p < n; ++p) w_trial[p] = w[p] + step * d[p];
    const double f_new = loss_at(w_trial);
    if (!std::isfinite(f_new))
      fail(ErrorCategory::divergence, "loss became non-finite at cycle " + std::to_string(cycle));

    // Comparison of actual to predicted reduction.
    const double comparison = 2.0 * (f_new - f_old) / (step * mu);
    success = comparison >= 0.0;
    if (success) {
      w = w_trial;
      f_old = f_new;
      result.loss_trace.push_back(f_new);
      ++successes;
      g_old = std::move(g_new);
      g_new = grad_at(w);
      if (dot(g_new, g_new) <= tol2) {
        result.converged = true;
        break;
      }
    }

    if (comparison < 0.25) lambda = std::min(4.0 * lambda, lambda_max);
    if (comparison > 0.75) lambda = std::max(0.5 * lambda, lambda_min);

    if (successes == n) {
      for (std::size_t p = 0; p < n; ++p) d[p] = -g_new[p];
      successes = 0;
    } else if (success) {
      double gamma = 0.0;
      for (std::size_t p = 0; p < n; ++p) gamma += (g_old[p] - g_new[p]) * g_new[p];
      gamma /= mu;
      for (std::size_t p = 0; p < n; ++p) d[p] = gamma * d[p] - g_new[p];
    }
  }

  net.set_parameters(w);
  result.net = std::move(net);
  return result;
}

}  // namespace missingnet
