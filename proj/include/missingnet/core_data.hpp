#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace missingnet {

enum class Task { classification, regression };

const char* task_name(Task task) noexcept;
Task parse_task(const std::string& text);

using Label = std::size_t;

/// One row. `mask[i] == false` means feature i is missing and `features[i]`
/// must not be read.
struct Instance {
  std::vector<double> features;
  std::vector<bool> mask;
  std::optional<Label> label;     // classification target, index into class_labels
  std::vector<double> response;   // regression target; empty when absent

  static Instance complete(std::vector<double> values);

  std::size_t size() const noexcept { return features.size(); }
  bool present(std::size_t i) const { return mask[i]; }
  bool is_complete() const noexcept;
  std::size_t missing_count() const noexcept;
  std::vector<std::size_t> missing_indices() const;
};

struct Dataset {
  std::vector<Instance> instances;
  std::vector<std::string> feature_names;
  Task task = Task::classification;
  std::vector<std::string> class_labels;
  std::vector<std::string> target_names;  // regression outputs

  std::size_t size() const noexcept { return instances.size(); }
  std::size_t feature_count() const noexcept { return feature_names.size(); }
  std::size_t output_count() const noexcept { return target_names.size(); }
  bool is_complete() const noexcept;

  /// Throws invalid_input if any invariant is broken.
  void validate() const;

  /// A dataset with the same schema and no instances.
  Dataset empty_like() const;
};

/// Remaps the dataset's class indices onto `vocabulary` (e.g. the vocabulary a
/// model was trained with). Unknown labels are an invalid_input error.
void align_labels(Dataset& dataset, const std::vector<std::string>& vocabulary);

/// Sorted, duplicate-free feature indices.
class FeatureSubset {
 public:
  FeatureSubset() = default;
  /// Throws invalid_input unless indices are strictly ascending and < feature_count.
  FeatureSubset(std::vector<std::size_t> indices, std::size_t feature_count);

  std::span<const std::size_t> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  std::size_t operator[](std::size_t k) const { return indices_[k]; }
  bool contains(std::size_t feature) const;

  /// True iff every index in the subset is present in the instance.
  bool available_in(const Instance& instance) const;

  friend bool operator==(const FeatureSubset&, const FeatureSubset&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// Per-column min-max scaler learned from training data only.
class FeatureScaler {
 public:
  FeatureScaler() = default;
  FeatureScaler(std::vector<double> mins, std::vector<double> maxs);

  std::size_t size() const noexcept { return mins_.size(); }
  double min(std::size_t i) const { return mins_[i]; }
  double max(std::size_t i) const { return maxs_[i]; }
  const std::vector<double>& mins() const noexcept { return mins_; }
  const std::vector<double>& maxs() const noexcept { return maxs_; }

  /// Maps [min, max] onto [0, 1], clipping outside values. A zero-width range maps to 0.
  double scale(std::size_t i, double value) const;
  /// Inverse of scale on [0, 1]; a zero-width range returns min.
  double unscale(std::size_t i, double scaled) const;

  std::vector<double> scale_all(std::span<const double> values) const;
  std::vector<double> unscale_all(std::span<const double> scaled) const;

 private:
  std::vector<double> mins_;
  std::vector<double> maxs_;
};

std::pair<Dataset, Dataset> split(const Dataset& dataset, double train_fraction,
                                  std::uint64_t seed);

/// Feature scaler over present cells only. A column with no present value is an
/// unscalable_feature error naming the column.
FeatureScaler fit_scaler(const Dataset& train);

/// Scaler over regression responses (all assumed present).
FeatureScaler fit_response_scaler(const Dataset& train);

/// Scaled values of `subset`, in index order. Throws member_unusable if any of
/// the subset's features is missing from the instance.
std::vector<double> project(const Instance& instance, const FeatureSubset& subset,
                            const FeatureScaler& scaler);

/// Scaled values of every feature of a complete instance.
std::vector<double> project_all(const Instance& instance, const FeatureScaler& scaler);

}  // namespace missingnet
