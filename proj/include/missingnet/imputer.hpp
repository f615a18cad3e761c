#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "missingnet/core_data.hpp"
#include "missingnet/genetic.hpp"
#include "missingnet/mlp.hpp"

namespace missingnet {

/// Autoencoder plus the scaler that maps raw features into its [0, 1] domain.
/// The GA searches missing slots inside (0, 1) in scaled space.
struct ImputerModel {
  Mlp autoencoder;
  FeatureScaler scaler;

  bool trained() const noexcept { return autoencoder.parameter_count() > 0; }
  std::size_t feature_count() const noexcept { return autoencoder.input_dim(); }
};

struct ImputerTrainConfig {
  std::size_t hidden_dim = 0;  // 0 picks ceil(n / 2)
  TrainConfig train;
};

/// Fits the scaler and trains the autoencoder to reproduce complete rows.
ImputerModel train_imputer(const Dataset& complete, const ImputerTrainConfig& config);

/// Squared reconstruction error summed over every component, after filling
/// the missing slots of `scaled_known` (mask order) with `candidate`.
/// `scaled_known` values at missing positions are ignored.
double imputation_objective(const ImputerModel& model, std::span<const double> scaled_known,
                            const std::vector<bool>& mask, std::span<const double> candidate);

struct ImputeResult {
  Instance completed;
  double objective = 0.0;
  bool nothing_missing = false;
};

/// Estimates the missing values of `instance`. Present values are copied bit for bit.
ImputeResult impute(const ImputerModel& model, const Instance& instance, const GaConfig& ga);

/// Imputes every row independently. Row r uses GA seed mix_seed(ga.seed, r), so the
/// parallel and serial paths agree exactly.
std::vector<ImputeResult> impute_batch(const ImputerModel& model, std::span<const Instance> rows,
                                       const GaConfig& ga, Exec exec);

}  // namespace missingnet
