#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "doctest.h"
#include "missingnet/core_data.hpp"
#include "missingnet/csv.hpp"
#include "missingnet/error.hpp"

using namespace missingnet;

namespace {

Dataset numbered(std::size_t rows, std::size_t features = 2) {
  Dataset ds;
  for (std::size_t i = 0; i < features; ++i) ds.feature_names.push_back("f" + std::to_string(i));
  ds.class_labels = {"a"};
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<double> values(features, static_cast<double>(r));
    Instance inst = Instance::complete(values);
    inst.label = 0;
    ds.instances.push_back(inst);
  }
  return ds;
}

ErrorCategory category_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.category();
  }
  FAIL("expected an Error");
  return ErrorCategory::io;
}

}  // namespace

TEST_CASE("split sizes and determinism") {
  const Dataset ds = numbered(4000);
  auto [train, val] = split(ds, 0.5, 1);
  CHECK(train.size() == 2000);
  CHECK(val.size() == 2000);

  auto [a, b] = split(numbered(2), 0.5, 9);
  CHECK(a.size() == 1);
  CHECK(b.size() == 1);

  const Dataset hundred = numbered(100);
  auto rows_of = [](const Dataset& d) {
    std::vector<double> out;
    for (const Instance& inst : d.instances) out.push_back(inst.features[0]);
    return out;
  };
  CHECK(rows_of(split(hundred, 0.5, 3).first) == rows_of(split(hundred, 0.5, 3).first));
  CHECK(rows_of(split(hundred, 0.5, 3).first) != rows_of(split(hundred, 0.5, 4).first));
}

TEST_CASE("split then recombine keeps every instance once") {
  const Dataset ds = numbered(257);
  auto [train, val] = split(ds, 0.3, 11);
  std::multiset<double> seen;
  for (const Instance& inst : train.instances) seen.insert(inst.features[0]);
  for (const Instance& inst : val.instances) seen.insert(inst.features[0]);
  CHECK(seen.size() == 257);
  for (std::size_t r = 0; r < 257; ++r) CHECK(seen.count(static_cast<double>(r)) == 1);
}

TEST_CASE("split rejects bad input") {
  CHECK(category_of([] { split(numbered(0), 0.5, 0); }) == ErrorCategory::invalid_input);
  CHECK(category_of([] { split(numbered(1), 0.5, 0); }) == ErrorCategory::invalid_input);
  CHECK(category_of([] { split(numbered(10), 1.0, 0); }) == ErrorCategory::invalid_input);
}

TEST_CASE("fit_scaler ignores missing cells") {
  Dataset ds = numbered(3, 1);
  ds.instances[0].features[0] = 0.0;
  ds.instances[1].features[0] = 10.0;
  ds.instances[2].features[0] = -1e9;
  ds.instances[2].mask[0] = false;
  const FeatureScaler sc = fit_scaler(ds);
  CHECK(sc.min(0) == 0.0);
  CHECK(sc.max(0) == 10.0);
  CHECK(sc.scale(0, 5.0) == doctest::Approx(0.5));
  CHECK(sc.scale(0, 12.0) == 1.0);
  CHECK(sc.scale(0, -3.0) == 0.0);
}

TEST_CASE("constant column scales to zero") {
  Dataset ds = numbered(3, 1);
  for (Instance& inst : ds.instances) inst.features[0] = 3.0;
  const FeatureScaler sc = fit_scaler(ds);
  CHECK(sc.min(0) == 3.0);
  CHECK(sc.max(0) == 3.0);
  CHECK(sc.scale(0, 3.0) == 0.0);
  CHECK(sc.scale(0, 7.0) == 0.0);
}

TEST_CASE("fully missing feature is unscalable and named") {
  Dataset ds = numbered(3, 2);
  ds.feature_names[1] = "acetylene";
  for (Instance& inst : ds.instances) inst.mask[1] = false;
  try {
    fit_scaler(ds);
    FAIL("expected unscalable feature");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::unscalable_feature);
    CHECK(std::string(e.what()).find("acetylene") != std::string::npos);
  }
}

TEST_CASE("scaling is idempotent on in-range data and lands in the unit interval") {
  const FeatureScaler unit({0.0}, {1.0});
  for (double v = -2.0; v <= 3.0; v += 0.125) {
    const double s = unit.scale(0, v);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    CHECK(unit.scale(0, s) == s);
  }
}

TEST_CASE("project selects the subset in index order") {
  const FeatureScaler sc({0, 0, 0, 0, 0}, {10, 10, 10, 10, 10});
  const Instance inst = Instance::complete({1, 2, 3, 4, 5});
  const std::vector<double> v = project(inst, FeatureSubset({0, 1, 2}, 5), sc);
  CHECK(v == std::vector<double>{0.1, 0.2, 0.3});
}

TEST_CASE("project on a missing feature marks the member unusable") {
  const FeatureScaler sc({0, 0, 0, 0, 0}, {1, 1, 1, 1, 1});
  Instance inst = Instance::complete({0.1, 0.2, 0.3, 0.4, 0.5});
  inst.mask[0] = false;
  CHECK(category_of([&] { project(inst, FeatureSubset({0, 1, 2}, 5), sc); }) ==
        ErrorCategory::member_unusable);
  inst.mask[1] = false;
  CHECK(project(inst, FeatureSubset({2, 3, 4}, 5), sc).size() == 3);
}

TEST_CASE("project never reads a missing cell") {
  const double poison = std::numeric_limits<double>::quiet_NaN();
  const FeatureScaler sc({0, 0, 0, 0}, {1, 1, 1, 1});
  Instance inst = Instance::complete({poison, 0.4, poison, 0.9});
  inst.mask[0] = inst.mask[2] = false;
  for (const FeatureSubset& s : {FeatureSubset({1, 3}, 4), FeatureSubset({1}, 4), FeatureSubset({3}, 4)}) {
    for (double v : project(inst, s, sc)) CHECK(std::isfinite(v));
  }
}

TEST_CASE("feature subsets must be sorted and unique") {
  CHECK_NOTHROW(FeatureSubset({0, 2, 4}, 5));
  CHECK_THROWS_AS(FeatureSubset({2, 1}, 5), Error);
  CHECK_THROWS_AS(FeatureSubset({1, 1}, 5), Error);
  CHECK_THROWS_AS(FeatureSubset({5}, 5), Error);
}

TEST_CASE("CSV: empty and non-numeric cells become missing") {
  std::istringstream in("a,b,c,label\n1,,3,x\n4,n/a,6,y\n");
  const Dataset ds = read_csv(in, {});
  REQUIRE(ds.size() == 2);
  CHECK(ds.feature_names == std::vector<std::string>{"a", "b", "c"});
  CHECK(ds.class_labels == std::vector<std::string>{"x", "y"});
  CHECK_FALSE(ds.instances[0].mask[1]);
  CHECK_FALSE(ds.instances[1].mask[1]);
  CHECK(ds.instances[1].features[2] == 6.0);
  CHECK(*ds.instances[1].label == 1);
}

TEST_CASE("CSV: named regression targets and round trip") {
  std::istringstream in("y1,x1,x2,y2\n0.5,1,2,7\n1.5,3,,8\n");
  CsvOptions opt;
  opt.task = Task::regression;
  opt.targets = {"y1", "y2"};
  const Dataset ds = read_csv(in, opt);
  CHECK(ds.feature_names == std::vector<std::string>{"x1", "x2"});
  CHECK(ds.target_names == std::vector<std::string>{"y1", "y2"});
  CHECK(ds.instances[1].response == std::vector<double>{1.5, 8.0});

  std::ostringstream out;
  write_csv(out, ds);
  CHECK(out.str() == "x1,x2,y1,y2\n1,2,0.5,7\n3,,1.5,8\n");
}

TEST_CASE("CSV: ragged rows are rejected") {
  std::istringstream in("a,b,label\n1,2\n");
  CHECK_THROWS_AS(read_csv(in, {}), Error);
}

TEST_CASE("align_labels remaps onto a model vocabulary") {
  std::istringstream in("a,label\n1,faulty\n2,healthy\n");
  Dataset ds = read_csv(in, {});
  align_labels(ds, {"healthy", "faulty"});
  CHECK(*ds.instances[0].label == 1);
  CHECK(*ds.instances[1].label == 0);
  CHECK_THROWS_AS(align_labels(ds, {"healthy"}), Error);
}
