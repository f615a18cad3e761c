#include "missingnet/core_data.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "missingnet/error.hpp"
#include "missingnet/rng.hpp"

namespace missingnet {

const char* category_name(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::invalid_input: return "invalid-input";
    case ErrorCategory::unscalable_feature: return "unscalable-feature";
    case ErrorCategory::member_unusable: return "member-unusable";
    case ErrorCategory::model_not_trained: return "model-not-trained";
    case ErrorCategory::no_usable_member: return "no-usable-member";
    case ErrorCategory::divergence: return "divergence";
    case ErrorCategory::io: return "io";
  }
  return "unknown";
}

const char* task_name(Task task) noexcept {
  return task == Task::classification ? "classification" : "regression";
}

Task parse_task(const std::string& text) {
  if (text == "classification") return Task::classification;
  if (text == "regression") return Task::regression;
  fail(ErrorCategory::invalid_input, "unknown task '" + text + "'");
}

Instance Instance::complete(std::vector<double> values) {
  Instance inst;
  inst.mask.assign(values.size(), true);
  inst.features = std::move(values);
  return inst;
}

bool Instance::is_complete() const noexcept {
  return std::all_of(mask.begin(), mask.end(), [](bool m) { return m; });
}

std::size_t Instance::missing_count() const noexcept {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), false));
}

std::vector<std::size_t> Instance::missing_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (!mask[i]) out.push_back(i);
  return out;
}

bool Dataset::is_complete() const noexcept {
  return std::all_of(instances.begin(), instances.end(),
                     [](const Instance& inst) { return inst.is_complete(); });
}

void Dataset::validate() const {
  const std::size_t n = feature_count();
  for (std::size_t r = 0; r < instances.size(); ++r) {
    const Instance& inst = instances[r];
    require(inst.features.size() == n && inst.mask.size() == n,
            "row " + std::to_string(r) + " has " + std::to_string(inst.features.size()) +
                " features, expected " + std::to_string(n));
    if (task == Task::classification && inst.label) {
      require(*inst.label < class_labels.size(),
              "row " + std::to_string(r) + " has a label outside the vocabulary");
    }
    if (task == Task::regression && !inst.response.empty()) {
      require(inst.response.size() == output_count(),
              "row " + std::to_string(r) + " has the wrong number of responses");
    }
  }
}

Dataset Dataset::empty_like() const {
  Dataset out;
  out.feature_names = feature_names;
  out.task = task;
  out.class_labels = class_labels;
  out.target_names = target_names;
  return out;
}

void align_labels(Dataset& dataset, const std::vector<std::string>& vocabulary) {
  if (dataset.task != Task::classification) return;
  std::vector<Label> remap(dataset.class_labels.size());
  for (std::size_t i = 0; i < dataset.class_labels.size(); ++i) {
    auto it = std::find(vocabulary.begin(), vocabulary.end(), dataset.class_labels[i]);
    require(it != vocabulary.end(),
            "label '" + dataset.class_labels[i] + "' is unknown to the model");
    remap[i] = static_cast<Label>(it - vocabulary.begin());
  }
  for (Instance& inst : dataset.instances)
    if (inst.label) inst.label = remap[*inst.label];
  dataset.class_labels = vocabulary;
}

FeatureSubset::FeatureSubset(std::vector<std::size_t> indices, std::size_t feature_count)
    : indices_(std::move(indices)) {
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    require(indices_[k] < feature_count, "feature subset index out of range");
    require(k == 0 || indices_[k - 1] < indices_[k],
            "feature subset indices must be unique and ascending");
  }
}

bool FeatureSubset::contains(std::size_t feature) const {
  return std::binary_search(indices_.begin(), indices_.end(), feature);
}

bool FeatureSubset::available_in(const Instance& instance) const {
  return std::all_of(indices_.begin(), indices_.end(),
                     [&](std::size_t i) { return i < instance.mask.size() && instance.mask[i]; });
}

FeatureScaler::FeatureScaler(std::vector<double> mins, std::vector<double> maxs)
    : mins_(std::move(mins)), maxs_(std::move(maxs)) {
  require(mins_.size() == maxs_.size(), "scaler min/max length mismatch");
  for (std::size_t i = 0; i < mins_.size(); ++i)
    require(mins_[i] <= maxs_[i], "scaler min exceeds max for column " + std::to_string(i));
}

double FeatureScaler::scale(std::size_t i, double value) const {
  const double range = maxs_[i] - mins_[i];
  if (!(range > 0.0)) return 0.0;
  return std::clamp((value - mins_[i]) / range, 0.0, 1.0);
}

double FeatureScaler::unscale(std::size_t i, double scaled) const {
  return mins_[i] + scaled * (maxs_[i] - mins_[i]);
}

std::vector<double> FeatureScaler::scale_all(std::span<const double> values) const {
  require(values.size() == size(), "scale_all: dimension mismatch");
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = scale(i, values[i]);
  return out;
}

std::vector<double> FeatureScaler::unscale_all(std::span<const double> scaled) const {
  require(scaled.size() == size(), "unscale_all: dimension mismatch");
  std::vector<double> out(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) out[i] = unscale(i, scaled[i]);
  return out;
}

std::pair<Dataset, Dataset> split(const Dataset& dataset, double train_fraction,
                                  std::uint64_t seed) {
  require(dataset.size() >= 2, "split needs at least two instances");
  require(train_fraction > 0.0 && train_fraction < 1.0, "train_fraction must lie in (0, 1)");

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  auto cut = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(dataset.size())));
  cut = std::clamp<std::size_t>(cut, 1, dataset.size() - 1);

  std::pair<Dataset, Dataset> out{dataset.empty_like(), dataset.empty_like()};
  out.first.instances.reserve(cut);
  out.second.instances.reserve(dataset.size() - cut);
  for (std::size_t k = 0; k < order.size(); ++k)
    (k < cut ? out.first : out.second).instances.push_back(dataset.instances[order[k]]);
  return out;
}

FeatureScaler fit_scaler(const Dataset& train) {
  const std::size_t n = train.feature_count();
  std::vector<double> mins(n, 0.0), maxs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    bool seen = false;
    for (const Instance& inst : train.instances) {
      if (!inst.mask[i]) continue;
      const double v = inst.features[i];
      if (!seen) {
        mins[i] = maxs[i] = v;
        seen = true;
      } else {
        mins[i] = std::min(mins[i], v);
        maxs[i] = std::max(maxs[i], v);
      }
    }
    if (!seen)
      fail(ErrorCategory::unscalable_feature,
           "feature '" + train.feature_names[i] + "' has no present value in training data");
  }
  return FeatureScaler(std::move(mins), std::move(maxs));
}

FeatureScaler fit_response_scaler(const Dataset& train) {
  const std::size_t m = train.output_count();
  require(!train.instances.empty(), "cannot fit a response scaler on no data");
  std::vector<double> mins(m), maxs(m);
  for (std::size_t k = 0; k < m; ++k) {
    mins[k] = maxs[k] = train.instances.front().response.at(k);
    for (const Instance& inst : train.instances) {
      mins[k] = std::min(mins[k], inst.response.at(k));
      maxs[k] = std::max(maxs[k], inst.response.at(k));
    }
  }
  return FeatureScaler(std::move(mins), std::move(maxs));
}

std::vector<double> project(const Instance& instance, const FeatureSubset& subset,
                            const FeatureScaler& scaler) {
  std::vector<double> out;
  out.reserve(subset.size());
  for (std::size_t i : subset.indices()) {
    if (i >= instance.mask.size() || !instance.mask[i])
      fail(ErrorCategory::member_unusable,
           "feature " + std::to_string(i) + " is missing from the instance");
    out.push_back(scaler.scale(i, instance.features[i]));
  }
  return out;
}

std::vector<double> project_all(const Instance& instance, const FeatureScaler& scaler) {
  require(instance.size() == scaler.size(), "project_all: dimension mismatch");
  std::vector<double> out(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (!instance.mask[i])
      fail(ErrorCategory::member_unusable,
           "feature " + std::to_string(i) + " is missing from the instance");
    out[i] = scaler.scale(i, instance.features[i]);
  }
  return out;
}

}  // namespace missingnet
