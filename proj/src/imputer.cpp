#include "missingnet/imputer.hpp"

#include "missingnet/error.hpp"

namespace missingnet {

ImputerModel train_imputer(const Dataset& complete, const ImputerTrainConfig& config) {
  require(!complete.instances.empty(), "imputer training needs data");
  require(complete.is_complete(), "imputer training data must be complete");
  const std::size_t n = complete.feature_count();
  require(n >= 2, "an autoencoder needs at least two features");
  const std::size_t hidden = config.hidden_dim ? config.hidden_dim : (n + 1) / 2;

  ImputerModel model;
  model.scaler = fit_scaler(complete);
  std::vector<std::vector<double>> rows;
  rows.reserve(complete.size());
  for (const Instance& inst : complete.instances) rows.push_back(project_all(inst, model.scaler));

  Mlp init = Mlp::autoencoder(n, hidden, config.train.seed);
  model.autoencoder = train_scg(std::move(init), rows, rows, config.train).net;
  return model;
}

double imputation_objective(const ImputerModel& model, std::span<const double> scaled_known,
                            const std::vector<bool>& mask, std::span<const double> candidate) {
  const std::size_t n = model.feature_count();
  require(scaled_known.size() == n && mask.size() == n, "objective: dimension mismatch");
  std::vector<double> x(n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i]) {
      x[i] = scaled_known[i];
    } else {
      require(next < candidate.size(), "objective: too few candidate values");
      x[i] = candidate[next++];
    }
  }
  require(next == candidate.size(), "objective: too many candidate values");
  const std::vector<double> y = model.autoencoder.forward(x);
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) err += (x[i] - y[i]) * (x[i] - y[i]);
  return err;
}

ImputeResult impute(const ImputerModel& model, const Instance& instance, const GaConfig& ga) {
  if (!model.trained()) fail(ErrorCategory::model_not_trained, "imputer has no autoencoder");
  const std::size_t n = model.feature_count();
  require(instance.size() == n, "instance has the wrong number of features");

  ImputeResult result;
  result.completed = instance;
  std::vector<double> scaled(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    if (instance.mask[i]) scaled[i] = model.scaler.scale(i, instance.features[i]);

  const std::vector<std::size_t> missing = instance.missing_indices();
  if (missing.empty()) {
    result.nothing_missing = true;
    result.objective = imputation_objective(model, scaled, instance.mask, {});
    return result;
  }

  const std::vector<Bounds> bounds(missing.size(), Bounds{0.0, 1.0});
  const Objective objective = [&](std::span<const double> candidate) {
    return imputation_objective(model, scaled, instance.mask, candidate);
  };
  const GaResult best = minimize(objective, bounds, ga);

  for (std::size_t m = 0; m < missing.size(); ++m) {
    const std::size_t i = missing[m];
    result.completed.features[i] = model.scaler.unscale(i, best.best_genes[m]);
    result.completed.mask[i] = true;
  }
  result.objective = best.best_value;
  return result;
}

std::vector<ImputeResult> impute_batch(const ImputerModel& model, std::span<const Instance> rows,
                                       const GaConfig& ga, Exec exec) {
  if (!model.trained()) fail(ErrorCategory::model_not_trained, "imputer has no autoencoder");
  std::vector<ImputeResult> out(rows.size());
  const auto count = static_cast<std::ptrdiff_t>(rows.size());
  auto one = [&](std::ptrdiff_t r) {
    GaConfig cfg = ga;
    cfg.seed = mix_seed(ga.seed, static_cast<std::uint64_t>(r));
    cfg.exec = Exec::serial;
    out[static_cast<std::size_t>(r)] = impute(model, rows[static_cast<std::size_t>(r)], cfg);
  };
  if (exec == Exec::parallel) {
    // Exceptions cannot cross the parallel region; validate up front.
    for (const Instance& inst : rows)
      require(inst.size() == model.feature_count(), "instance has the wrong number of features");
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < count; ++r) one(r);
  } else {
    for (std::ptrdiff_t r = 0; r < count; ++r) one(r);
  }
  return out;
}

}  // namespace missingnet
