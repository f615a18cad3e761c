#include <cmath>
#include <cstring>
#include <random>

#include "doctest.h"
#include "missingnet/error.hpp"
#include "missingnet/imputer.hpp"

using namespace missingnet;

namespace {

// x2 = 2 x1 with a third, independent feature.
Dataset linked(std::size_t rows, std::uint64_t seed) {
  Dataset ds;
  ds.task = Task::regression;
  ds.feature_names = {"x1", "x2", "x3"};
  ds.target_names = {"y"};
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const double a = u(rng);
    Instance inst = Instance::complete({a, 2.0 * a, u(rng)});
    inst.response = {0.0};
    ds.instances.push_back(inst);
  }
  return ds;
}

const ImputerModel& shared_model() {
  static const ImputerModel model = [] {
    ImputerTrainConfig cfg;
    cfg.hidden_dim = 2;
    cfg.train.seed = 3;
    return train_imputer(linked(300, 1), cfg);
  }();
  return model;
}

}  // namespace

TEST_CASE("objective prefers the consistent value") {
  const ImputerModel& model = shared_model();
  const std::vector<bool> mask{true, false, true};
  const std::vector<double> known{0.3, 0.0, 0.5};  // scaled; x2 scaled equals x1 scaled
  const double right = imputation_objective(model, known, mask, std::vector<double>{0.3});
  const double wrong = imputation_objective(model, known, mask, std::vector<double>{0.9});
  CHECK(right < wrong);
  CHECK_THROWS_AS(imputation_objective(model, known, mask, std::vector<double>{0.3, 0.1}), Error);
}

TEST_CASE("GA imputation recovers a linked feature") {
  const ImputerModel& model = shared_model();
  const Dataset probe = linked(10, 77);
  std::size_t close = 0;
  for (std::size_t s = 0; s < probe.size(); ++s) {
    Instance inst = probe.instances[s];
    const double truth = inst.features[1];
    inst.mask[1] = false;
    inst.features[1] = 0.0;
    GaConfig ga;
    ga.seed = s;
    const ImputeResult r = impute(model, inst, ga);
    close += std::abs(r.completed.features[1] - truth) <= 0.1;
    CHECK(r.completed.is_complete());
  }
  CHECK(close >= 8);
}

TEST_CASE("complete instances pass through untouched") {
  const Instance inst = linked(1, 5).instances[0];
  const ImputeResult r = impute(shared_model(), inst, {});
  CHECK(r.nothing_missing);
  CHECK(r.completed.features == inst.features);
}

TEST_CASE("present values are copied bit for bit") {
  Instance inst = Instance::complete({0.1 + 0.2, 0.0, 0.7000000000000001});
  inst.mask[1] = false;
  const ImputeResult r = impute(shared_model(), inst, {});
  CHECK(std::memcmp(&r.completed.features[0], &inst.features[0], sizeof(double)) == 0);
  CHECK(std::memcmp(&r.completed.features[2], &inst.features[2], sizeof(double)) == 0);
  CHECK(r.completed.mask == std::vector<bool>{true, true, true});
}

TEST_CASE("GA estimate is no worse than the midpoint guess") {
  const ImputerModel& model = shared_model();
  for (const Instance& base : linked(10, 99).instances) {
    Instance inst = base;
    inst.mask[0] = inst.mask[2] = false;
    const ImputeResult r = impute(model, inst, {});
    std::vector<double> scaled = model.scaler.scale_all(inst.features);
    const double midpoint = imputation_objective(model, scaled, inst.mask, std::vector<double>{0.5, 0.5});
    CHECK(r.objective <= midpoint);
  }
}

TEST_CASE("batch imputation: serial and parallel agree") {
  std::vector<Instance> rows = linked(12, 4).instances;
  for (std::size_t r = 0; r < rows.size(); ++r) rows[r].mask[r % 3] = false;
  GaConfig ga;
  ga.seed = 8;
  const auto a = impute_batch(shared_model(), rows, ga, Exec::serial);
  const auto b = impute_batch(shared_model(), rows, ga, Exec::parallel);
  REQUIRE(a.size() == rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    CHECK(a[r].completed.features == b[r].completed.features);
    CHECK(a[r].objective == b[r].objective);
  }
}

TEST_CASE("untrained imputer is reported") {
  Instance inst = Instance::complete({1, 2, 3});
  inst.mask[0] = false;
  try {
    impute(ImputerModel{}, inst, {});
    FAIL("expected model_not_trained");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::model_not_trained);
  }
}
