#include <algorithm>
#include <numeric>
#include <random>

#include "missingnet/error.hpp"
#include "missingnet/harness.hpp"

namespace missingnet {

const char* missing_mode_name(MissingMode mode) noexcept {
  return mode == MissingMode::mcar ? "mcar" : "mar";
}

MissingMode parse_missing_mode(const std::string& text) {
  if (text == "mcar" || text == "MCAR") return MissingMode::mcar;
  if (text == "mar" || text == "MAR") return MissingMode::mar;
  fail(ErrorCategory::invalid_input, "unknown missingness mode '" + text + "'");
}

Dataset inject_missing(const Dataset& dataset, const MissingnessSpec& spec) {
  require(dataset.is_complete(), "missingness is injected into complete data only");
  const std::size_t n = dataset.feature_count();
  Dataset out = dataset;
  Rng rng(spec.seed);

  if (spec.mode == MissingMode::mar) {
    require(spec.driver < n && spec.victim < n, "MAR driver/victim index out of range");
    require(spec.driver != spec.victim, "MAR driver and victim must differ");
    for (Instance& inst : out.instances)
      if (inst.features[spec.driver] < spec.threshold) inst.mask[spec.victim] = false;
    return out;
  }

  if (spec.probability) {
    const double p = *spec.probability;
    require(p >= 0.0 && p <= 1.0, "missingness probability must lie in [0, 1]");
    std::bernoulli_distribution drop(p);
    for (Instance& inst : out.instances)
      for (std::size_t i = 0; i < n; ++i)
        if (drop(rng)) inst.mask[i] = false;
    return out;
  }

  require(spec.count <= n, "cannot mask more features than an instance has");
  if (spec.count == 0) return out;
  std::vector<std::size_t> order(n);
  for (Instance& inst : out.instances) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Partial Fisher-Yates: the first `count` slots are a uniform sample.
    for (std::size_t k = 0; k < spec.count; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, n - 1);
      std::swap(order[k], order[pick(rng)]);
      inst.mask[order[k]] = false;
    }
  }
  return out;
}

}  // namespace missingnet
