#include "missingnet/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "missingnet/error.hpp"

namespace missingnet {

void GaConfig::validate() const {
  require(population_size >= 1, "population size must be positive");
  require(generations >= 1, "generation count must be positive");
  require(crossover_rate >= 0.0 && crossover_rate <= 1.0, "crossover rate must lie in [0, 1]");
  require(mutation_rate >= 0.0 && mutation_rate <= 1.0, "mutation rate must lie in [0, 1]");
  require(mutation_sigma_fraction > 0.0, "mutation sigma fraction must be positive");
  require(elitism_count < population_size, "elitism count must be below the population size");
}

void evaluate_population(std::vector<Chromosome>& population, const Objective& objective,
                         Exec exec) {
  const auto count = static_cast<std::ptrdiff_t>(population.size());
  auto eval = [&](std::ptrdiff_t c) {
    Chromosome& chromo = population[static_cast<std::size_t>(c)];
    const double v = objective(chromo.genes);
    chromo.objective = std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < count; ++c) eval(c);
  } else {
    for (std::ptrdiff_t c = 0; c < count; ++c) eval(c);
  }
}

GaResult minimize(const Objective& objective, std::span<const Bounds> bounds,
                  const GaConfig& config) {
  config.validate();
  require(!bounds.empty(), "GA needs at least one gene");
  for (const Bounds& b : bounds) require(b.low <= b.high, "GA bounds have low > high");

  const std::size_t genes = bounds.size();
  Rng rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Chromosome> population(config.population_size);
  for (Chromosome& c : population) {
    c.genes.resize(genes);
    for (std::size_t g = 0; g < genes; ++g)
      c.genes[g] = bounds[g].low + unit(rng) * (bounds[g].high - bounds[g].low);
  }
  evaluate_population(population, objective, config.exec);

  GaResult result;
  result.evaluations = population.size();
  auto by_objective = [](const Chromosome& a, const Chromosome& b) { return a.objective < b.objective; };
  auto track_best = [&]() {
    const auto best = std::min_element(population.begin(), population.end(), by_objective);
    if (result.history.empty() || best->objective < result.best_value) {
      result.best_value = best->objective;
      result.best_genes = best->genes;
    }
    result.history.push_back(result.best_value);
  };
  track_best();

  std::uniform_int_distribution<std::size_t> pick(0, config.population_size - 1);
  auto tournament = [&]() -> const Chromosome& {
    const Chromosome& a = population[pick(rng)];
    const Chromosome& b = population[pick(rng)];
    return b.objective < a.objective ? b : a;
  };

  std::vector<std::size_t> rank(config.population_size);
  for (std::size_t gen = 1; gen < config.generations; ++gen) {
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
      return population[a].objective < population[b].objective;
    });

    std::vector<Chromosome> next;
    next.reserve(config.population_size);
    for (std::size_t e = 0; e < config.elitism_count; ++e) next.push_back(population[rank[e]]);

    const std::size_t first_child = next.size();
    while (next.size() < config.population_size) {
      const Chromosome& mother = tournament();
      const Chromosome& father = tournament();
      Chromosome child{mother.genes, 0.0};
      for (std::size_t g = 0; g < genes; ++g) {
        if (unit(rng) < config.crossover_rate) child.genes[g] = father.genes[g];
        if (unit(rng) < config.mutation_rate) {
          const double range = bounds[g].high - bounds[g].low;
          child.genes[g] += gauss(rng) * config.mutation_sigma_fraction * range;
          child.genes[g] = std::clamp(child.genes[g], bounds[g].low, bounds[g].high);
        }
      }
      next.push_back(std::move(child));
    }

    std::vector<Chromosome> children(std::make_move_iterator(next.begin() + static_cast<std::ptrdiff_t>(first_child)),
                                     std::make_move_iterator(next.end()));
    evaluate_population(children, objective, config.exec);
    result.evaluations += children.size();
    std::move(children.begin(), children.end(), next.begin() + static_cast<std::ptrdiff_t>(first_child));

    population = std::move(next);
    track_best();
  }
  return result;
}

}  // namespace missingnet
