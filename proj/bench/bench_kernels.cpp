// Serial vs OpenMP timings of the parallel kernels. Arg 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>


#include "missingnet/ensemble.hpp"
#include "missingnet/genetic.hpp"
#include "missingnet/harness.hpp"
#include "missingnet/imputer.hpp"

using namespace missingnet;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

struct ClassificationData {
  Dataset train, val, test;
  ClassificationData() {
    auto [fit, rest] = split(synth_generate(Task::classification, 1500, 1), 1.0 / 3.0, 1);
    auto [v, t] = split(rest, 0.5, 2);
    train = std::move(fit);
    val = std::move(v);
    test = std::move(t);
  }
};

const ClassificationData& data() {
  static const ClassificationData d;
  return d;
}

const ImputerModel& imputer() {
  static const ImputerModel model = [] {
    ImputerTrainConfig cfg;
    cfg.hidden_dim = 6;
    cfg.train.max_cycles = 300;
    return train_imputer(data().train, cfg);
  }();
  return model;
}

void BM_TrainEnsemble(benchmark::State& state) {
  EnsembleConfig cfg;
  cfg.n_avail = 8;
  cfg.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(train_ensemble(data().train, data().val, cfg));
}

void BM_TrainRegressionEnsemble(benchmark::State& state) {
  auto [train, val] = split(synth_generate(Task::regression, 600, 3), 0.5, 1);
  EnsembleConfig cfg;
  cfg.task = Task::regression;
  cfg.n_avail = 2;
  cfg.train.max_cycles = 200;
  cfg.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(train_ensemble(train, val, cfg));
}

void BM_EvaluatePopulation(benchmark::State& state) {
  const ImputerModel& model = imputer();
  Instance inst = data().test.instances[0];
  inst.mask[2] = inst.mask[5] = false;
  const std::vector<double> scaled = model.scaler.scale_all(inst.features);
  const Objective f = [&](std::span<const double> c) {
    return imputation_objective(model, scaled, inst.mask, c);
  };
  std::vector<Chromosome> pop(200, Chromosome{{0.3, 0.6}, 0.0});
  for (std::size_t i = 0; i < pop.size(); ++i) pop[i].genes = {i / 200.0, 1.0 - i / 200.0};
  for (auto _ : state) {
    evaluate_population(pop, f, exec_of(state));
    benchmark::DoNotOptimize(pop.data());
  }
}

void BM_ImputeBatch(benchmark::State& state) {
  std::vector<Instance> rows(data().test.instances.begin(), data().test.instances.begin() + 100);
  for (std::size_t r = 0; r < rows.size(); ++r) rows[r].mask[r % 10] = false;
  GaConfig ga;
  for (auto _ : state) benchmark::DoNotOptimize(impute_batch(imputer(), rows, ga, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_TrainEnsemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrainRegressionEnsemble)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluatePopulation)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ImputeBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
