#include <cmath>
#include <sstream>

#include "doctest.h"
#include "missingnet/csv.hpp"
#include "missingnet/error.hpp"
#include "missingnet/harness.hpp"

using namespace missingnet;

namespace {

std::string csv_of(const Dataset& ds) {
  std::ostringstream out;
  write_csv(out, ds);
  return out.str();
}

}  // namespace

TEST_CASE("MCAR with zero count changes nothing") {
  const Dataset ds = synth_generate(Task::classification, 50, 1);
  MissingnessSpec spec;
  spec.count = 0;
  CHECK(csv_of(inject_missing(ds, spec)) == csv_of(ds));
}

TEST_CASE("MCAR with one missing spreads evenly over features") {
  const Dataset ds = synth_generate(Task::classification, 1000, 2);
  MissingnessSpec spec;
  spec.count = 1;
  spec.seed = 9;
  const Dataset out = inject_missing(ds, spec);
  std::vector<std::size_t> per_feature(10, 0);
  for (const Instance& inst : out.instances) {
    CHECK(inst.missing_count() == 1);
    for (std::size_t i : inst.missing_indices()) ++per_feature[i];
  }
  for (std::size_t c : per_feature) {
    CHECK(c >= 60);
    CHECK(c <= 140);
  }
  // Values and labels are untouched; only masks change.
  for (std::size_t r = 0; r < ds.size(); ++r) {
    CHECK(out.instances[r].features == ds.instances[r].features);
    CHECK(out.instances[r].label == ds.instances[r].label);
  }
}

TEST_CASE("MCAR by probability and bad counts") {
  const Dataset ds = synth_generate(Task::classification, 400, 3);
  MissingnessSpec spec;
  spec.probability = 0.25;
  std::size_t dropped = 0;
  for (const Instance& inst : inject_missing(ds, spec).instances) dropped += inst.missing_count();
  CHECK(dropped > 800);
  CHECK(dropped < 1200);
  MissingnessSpec too_many;
  too_many.count = 11;
  CHECK_THROWS_AS(inject_missing(ds, too_many), Error);
}

TEST_CASE("MAR masks the victim exactly when the driver is low") {
  const Dataset ds = synth_generate(Task::regression, 300, 4);
  MissingnessSpec spec;
  spec.mode = MissingMode::mar;
  spec.driver = 0;
  spec.victim = 2;
  spec.threshold = 15.0;
  const Dataset out = inject_missing(ds, spec);
  for (const Instance& inst : out.instances) {
    CHECK(inst.mask[2] == !(inst.features[0] < 15.0));
    CHECK(inst.mask[0]);
    CHECK(inst.mask[1]);
    CHECK(inst.mask[3]);
  }
  spec.victim = 0;
  CHECK_THROWS_AS(inject_missing(ds, spec), Error);
  Dataset holed = ds;
  holed.instances[0].mask[1] = false;
  spec.victim = 2;
  CHECK_THROWS_AS(inject_missing(holed, spec), Error);
}

TEST_CASE("tolerance accuracy") {
  CHECK(tolerance_accuracy(std::vector<double>{1.1, 2.0, 3.0}, std::vector<double>{1.0, 1.0, 10.0}) ==
        doctest::Approx(100.0 / 3.0));
  CHECK(tolerance_accuracy(std::vector<double>{0.0}, std::vector<double>{0.0}) == 100.0);
  CHECK(tolerance_accuracy(std::vector<double>{1e-7}, std::vector<double>{0.0}) == 100.0);
  CHECK(tolerance_accuracy(std::vector<double>{-1.2}, std::vector<double>{-1.0}) == 100.0);
  CHECK(tolerance_accuracy(std::vector<double>{-1.21}, std::vector<double>{-1.0}) == 0.0);
  CHECK_THROWS_AS(tolerance_accuracy(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}), Error);
  CHECK_THROWS_AS(tolerance_accuracy(std::vector<double>{}, std::vector<double>{}), Error);
}

TEST_CASE("synthetic data is deterministic and well formed") {
  for (Task t : {Task::classification, Task::regression}) {
    const std::string a = csv_of(synth_generate(t, 120, 11));
    CHECK(a == csv_of(synth_generate(t, 120, 11)));
    CHECK(a != csv_of(synth_generate(t, 120, 12)));
    const Dataset ds = synth_generate(t, 120, 11);
    CHECK_NOTHROW(ds.validate());
    CHECK(ds.is_complete());
  }
  const Dataset c = synth_generate(Task::classification, 2000, 1);
  CHECK(c.feature_count() == 10);
  std::size_t faulty = 0;
  for (const Instance& inst : c.instances) faulty += *inst.label;
  CHECK(faulty > 900);
  CHECK(faulty < 1100);
  const Dataset r = synth_generate(Task::regression, 10, 1);
  CHECK(r.feature_count() == 4);
  CHECK(r.output_count() == 2);
}

TEST_CASE("regression outputs move with the inputs") {
  const Dataset r = synth_generate(Task::regression, 2000, 6);
  // Rows with high fuel have higher drum pressure on average.
  double lo = 0, hi = 0;
  std::size_t nlo = 0, nhi = 0;
  for (const Instance& inst : r.instances) {
    if (inst.features[0] < 14.0) {
      lo += inst.response[0];
      ++nlo;
    } else if (inst.features[0] > 16.0) {
      hi += inst.response[0];
      ++nhi;
    }
  }
  REQUIRE(nlo > 0);
  REQUIRE(nhi > 0);
  CHECK(hi / nhi > lo / nlo + 1.0);
}

TEST_CASE("stream evaluation: scoring, rescoring and determinism") {
  const Dataset data = synth_generate(Task::classification, 240, 8);
  auto [fit, test] = split(data, 0.5, 2);
  auto [train, val] = split(fit, 0.5, 3);
  EnsembleConfig ecfg;
  ecfg.n_avail = 8;
  const EnsembleModel ens = train_ensemble(train, val, ecfg);
  BaselineConfig bcfg;
  bcfg.imputer.hidden_dim = 6;
  bcfg.imputer.train.max_cycles = 100;
  const BaselineModel base = train_baseline(fit, bcfg);

  MissingnessSpec spec;
  spec.count = 1;
  spec.seed = 5;
  StreamOptions opt;
  opt.ga.generations = 5;
  const RunReport a = stream_eval(&ens, &base, test, spec, opt);
  const RunReport b = stream_eval(&ens, &base, test, spec, opt);
  CHECK(report_to_json(a, false) == report_to_json(b, false));
  CHECK(report_to_json(a).contains("timing"));
  CHECK_FALSE(report_to_json(a, false).contains("timing"));

  const MethodReport* e = a.method("ensemble");
  REQUIRE(e != nullptr);
  REQUIRE(a.method("nn_ga") != nullptr);
  CHECK(e->records.size() == test.size());
  for (const InstanceRecord& r : e->records) {
    CHECK(r.missing.size() == 1);
    CHECK(r.answered);
    CHECK(r.usable == 9);  // members avoiding the missing feature: C(9, 8)
  }

  // Rescoring from the records reproduces the stored score.
  RunReport copy = a;
  MethodReport m = *copy.method("ensemble");
  score_method(copy, m);
  CHECK(m.score == e->score);
  // Flipping every prediction turns correct into wrong for two classes.
  for (InstanceRecord& r : m.records) r.label = 1 - r.label;
  score_method(copy, m);
  CHECK(m.score == doctest::Approx(100.0 - e->score));

  const std::string table = summary_table(a);
  CHECK(table.find("Ensemble") != std::string::npos);
  CHECK(table.find("NN-GA") != std::string::npos);
  CHECK(table.find("Accuracy (%)") != std::string::npos);
}

TEST_CASE("unanswerable instances are counted, not fatal") {
  const Dataset data = synth_generate(Task::classification, 120, 9);
  auto [fit, test] = split(data, 0.5, 2);
  auto [train, val] = split(fit, 0.5, 3);
  EnsembleConfig ecfg;
  ecfg.n_avail = 9;
  const EnsembleModel ens = train_ensemble(train, val, ecfg);
  MissingnessSpec spec;
  spec.count = 2;
  const RunReport r = stream_eval(&ens, nullptr, test, spec, {});
  const MethodReport* e = r.method("ensemble");
  CHECK(e->unanswerable == test.size());
  CHECK(e->score == 0.0);
}
