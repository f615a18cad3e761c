#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "missingnet/rng.hpp"

namespace missingnet {

struct GaConfig {
  std::size_t population_size = 20;
  std::size_t generations = 25;
  double crossover_rate = 0.1;            // per-gene swap probability
  double mutation_rate = 0.05;            // per-gene probability
  double mutation_sigma_fraction = 0.1;   // of each gene's range
  std::size_t elitism_count = 1;
  std::uint64_t seed = 0;
  /// Evaluate each generation's objective values in parallel.
  Exec exec = Exec::parallel;

  void validate() const;
};

struct Bounds {
  double low = 0.0;
  double high = 1.0;
};

struct Chromosome {
  std::vector<double> genes;
  double objective = 0.0;
};

struct GaResult {
  std::vector<double> best_genes;
  double best_value = 0.0;
  std::vector<double> history;  // best-ever objective after each generation
  std::size_t evaluations = 0;
};

/// Must be safe to call concurrently when exec is parallel.
using Objective = std::function<double(std::span<const double>)>;

/// Evaluates every chromosome's objective. Non-finite values become +infinity
/// (worst fitness). The parallel path produces identical results to the serial one.
void evaluate_population(std::vector<Chromosome>& population, const Objective& objective, Exec exec);

/// Real-coded GA minimizing `objective` over the box `bounds`. The initial
/// population counts as the first of `generations` generations.
GaResult minimize(const Objective& objective, std::span<const Bounds> bounds, const GaConfig& config);

}  // namespace missingnet
