#include <cmath>
#include <random>

#include "doctest.h"
#include "missingnet/error.hpp"
#include "missingnet/mlp.hpp"
#include "missingnet/rng.hpp"

using namespace missingnet;

namespace {

using Rows = std::vector<std::vector<double>>;

// Straightforward reference forward pass.
std::vector<double> naive_forward(const Mlp& net, const std::vector<double>& x) {
  std::vector<double> h(net.hidden_dim()), y(net.output_dim());
  for (std::size_t j = 0; j < net.hidden_dim(); ++j) {
    double a = net.b1(j);
    for (std::size_t i = 0; i < net.input_dim(); ++i) a += net.w1(j, i) * x[i];
    h[j] = std::tanh(a);
  }
  for (std::size_t k = 0; k < net.output_dim(); ++k) {
    double a = net.b2(k);
    for (std::size_t j = 0; j < net.hidden_dim(); ++j) a += net.w2(k, j) * h[j];
    y[k] = a;
  }
  return y;
}

Rows random_rows(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Rows out(n, std::vector<double>(d));
  for (auto& r : out)
    for (double& v : r) v = u(rng);
  return out;
}

}  // namespace

TEST_CASE("zero network outputs zero; output bias passes through") {
  Mlp net(3, 2, 2);
  CHECK(net.parameter_count() == 3 * 2 + 2 + 2 * 2 + 2);
  CHECK(net.forward(std::vector<double>{1, 2, 3}) == std::vector<double>{0, 0});
  net.b2(0) = 0.25;
  net.b2(1) = -4.0;
  CHECK(net.forward(std::vector<double>{9, 9, 9}) == std::vector<double>{0.25, -4.0});
}

TEST_CASE("forward matches a naive loop") {
  const Mlp net = Mlp::random(4, 3, 2, 8);
  for (const auto& x : random_rows(20, 4, 1)) {
    const auto y = net.forward(x);
    const auto ref = naive_forward(net, x);
    for (std::size_t k = 0; k < 2; ++k) CHECK(y[k] == doctest::Approx(ref[k]).epsilon(1e-12));
  }
}

TEST_CASE("loss is a plain sum of squared errors") {
  Mlp net(1, 1, 1);
  net.b2(0) = 1.0;
  const Rows x{{0.0}}, t{{3.0}};
  CHECK(loss(net, x, t) == 4.0);
  const Rows x2{{0.0}, {5.0}}, t2{{3.0}, {0.0}};
  CHECK(loss(net, x2, t2) == 5.0);
  CHECK(mean_squared_error(net, x2, t2) == 2.5);
}

TEST_CASE("gradient agrees with central differences") {
  const Mlp net = Mlp::random(3, 4, 2, 21);
  const Rows x = random_rows(7, 3, 2), t = random_rows(7, 2, 3);
  const std::vector<double> g = gradient(net, x, t);
  REQUIRE(g.size() == net.parameter_count());
  const double h = 1e-5;
  for (std::size_t p = 0; p < g.size(); ++p) {
    Mlp plus = net, minus = net;
    plus.parameters()[p] += h;
    minus.parameters()[p] -= h;
    const double fd = (loss(plus, x, t) - loss(minus, x, t)) / (2 * h);
    CHECK(std::abs(fd - g[p]) <= 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("duplicating the data doubles the gradient") {
  const Mlp net = Mlp::random(2, 3, 1, 4);
  Rows x = random_rows(5, 2, 5), t = random_rows(5, 1, 6);
  const std::vector<double> g1 = gradient(net, x, t);
  const Rows x0 = x, t0 = t;
  x.insert(x.end(), x0.begin(), x0.end());
  t.insert(t.end(), t0.begin(), t0.end());
  const std::vector<double> g2 = gradient(net, x, t);
  for (std::size_t p = 0; p < g1.size(); ++p) CHECK(g2[p] == doctest::Approx(2 * g1[p]).epsilon(1e-12));
}

TEST_CASE("SCG learns XOR from every seed tried") {
  const Rows x{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  const Rows t{{-1}, {1}, {1}, {-1}};
  TrainConfig cfg;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TrainResult r = train_scg(Mlp::random(2, 2, 1, seed), x, t, cfg);
    CHECK(mean_squared_error(r.net, x, t) < 1e-3);
    for (std::size_t i = 1; i < r.loss_trace.size(); ++i) CHECK(r.loss_trace[i] <= r.loss_trace[i - 1]);
  }
}

TEST_CASE("SCG fits a rank-two autoencoder") {
  // Four-dimensional data on a two-dimensional plane, inside the tanh range.
  Rng rng(9);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  Rows x;
  for (int i = 0; i < 60; ++i) {
    const double a = u(rng), b = u(rng);
    x.push_back({a, b, 0.5 * (a + b), 0.5 * (a - b)});
  }
  TrainConfig cfg;
  cfg.max_cycles = 2000;
  const TrainResult r = train_scg(Mlp::autoencoder(4, 3, 1), x, x, cfg);
  CHECK(mean_squared_error(r.net, x, x) < 1e-3);
  CHECK(r.loss_trace.back() < r.loss_trace.front());
}

TEST_CASE("SCG at an optimum stops at once") {
  Mlp net(1, 1, 1);
  const Rows x{{0.3}}, t{{0.0}};
  const TrainResult r = train_scg(net, x, t, {});
  CHECK(r.converged);
  CHECK(r.cycles == 0);
  CHECK(r.net.parameters()[0] == 0.0);
}

TEST_CASE("parameters are validated") {
  Mlp net(2, 2, 1);
  CHECK_THROWS_AS(net.set_parameters(std::vector<double>(3, 0.0)), Error);
  std::vector<double> p(net.parameter_count(), 0.0);
  p[1] = std::nan("");
  CHECK_THROWS_AS(net.set_parameters(p), Error);
  CHECK_THROWS_AS(Mlp::autoencoder(3, 3, 0), Error);
}
