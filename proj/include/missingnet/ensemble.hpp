#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "missingnet/core_data.hpp"
#include "missingnet/fuzzy_artmap.hpp"
#include "missingnet/mlp.hpp"
#include "missingnet/rng.hpp"

namespace missingnet {

/// Number of ways to choose `n_avail` of `n` features. Throws invalid_input if
/// n_avail is outside [1, n] or the count does not fit in 64 bits.
std::uint64_t count_networks(std::size_t n, std::size_t n_avail);

/// All n_avail-subsets of {0..n-1} in lexicographic order.
std::vector<FeatureSubset> enumerate_subsets(std::size_t n, std::size_t n_avail);

/// Weighted-majority weights alpha_i = (1 - E_i) / sum_j (1 - E_j). Falls back to
/// uniform weights when every error is 1.
std::vector<double> ensemble_weights(std::span<const double> errors);

/// Picks the committee size from accuracies of committees of size 1, 3, 5, ...:
/// the first size whose successor does not improve, else the largest size.
std::size_t select_committee_size(std::span<const double> accuracy_by_odd_size);

struct EnsembleConfig {
  Task task = Task::classification;
  std::size_t n_avail = 1;
  FuzzyArtmapConfig artmap;
  std::size_t hidden_dim = 5;
  TrainConfig train;                // seed is the ensemble's base seed
  double tolerance = 0.2;           // regression validation error uses tolerance accuracy
  double abs_floor = 1e-6;
  std::size_t member_cap = 10000;
  Exec exec = Exec::parallel;

  void validate(std::size_t feature_count) const;
};

using MemberModel = std::variant<FuzzyArtmap, Mlp>;

struct EnsembleMember {
  FeatureSubset subset;
  MemberModel model;
  double weight = 0.0;            // alpha_i
  double validation_error = 0.0;  // E_i
};

struct EnsembleModel {
  EnsembleConfig config;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_labels;
  std::vector<std::string> target_names;
  FeatureScaler scaler;
  FeatureScaler response_scaler;          // regression only
  std::vector<EnsembleMember> members;
  std::size_t committee_size = 0;         // K*, classification only
  std::vector<double> committee_curve;    // validation accuracy (%) for sizes 1, 3, 5, ...

  std::size_t feature_count() const noexcept { return feature_names.size(); }
};

/// Trains one member per feature subset, scores each on `validation`, and assigns
/// weights. Members train concurrently under Exec::parallel; the result is
/// identical to the serial path.
EnsembleModel train_ensemble(const Dataset& train, const Dataset& validation,
                             const EnsembleConfig& config);

/// Members whose features are all present, highest weight first (ties: lower index).
std::vector<std::size_t> usable_members(const EnsembleModel& model, const Instance& instance);

/// Prediction of one member on an instance that has all of its features.
Label member_classify(const EnsembleModel& model, std::size_t member, const Instance& instance);
std::vector<double> member_regress(const EnsembleModel& model, std::size_t member,
                                   const Instance& instance);

struct VoteDiagnostics {
  std::size_t usable = 0;
  std::size_t committee = 0;
  std::vector<double> vote_mass;  // per class label
};

struct RegressionDiagnostics {
  std::size_t usable = 0;
  std::vector<std::size_t> members;
  std::vector<double> renormalized_weights;
};

/// Weighted vote over `voters` (member indices, highest weight first) given their
/// labels. Ties go to the label of the highest-weight voter among the tied labels.
Label weighted_vote(std::span<const double> weights, std::span<const Label> votes,
                    std::size_t label_count, std::vector<double>* vote_mass = nullptr);

/// Throws no_usable_member when every member needs a missing feature.
Label classify(const EnsembleModel& model, const Instance& instance,
               VoteDiagnostics* diagnostics = nullptr);
std::vector<double> regress(const EnsembleModel& model, const Instance& instance,
                            RegressionDiagnostics* diagnostics = nullptr);

}  // namespace missingnet
