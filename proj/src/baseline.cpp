#include "missingnet/error.hpp"
#include "missingnet/harness.hpp"

namespace missingnet {

BaselineModel train_baseline(const Dataset& train, const BaselineConfig& config) {
  require(train.is_complete(), "baseline training data must be complete");
  train.validate();

  BaselineModel model;
  model.task = train.task;
  model.feature_names = train.feature_names;
  model.class_labels = train.class_labels;
  model.target_names = train.target_names;
  model.imputer = train_imputer(train, config.imputer);

  std::vector<std::vector<double>> rows;
  rows.reserve(train.size());
  for (const Instance& inst : train.instances) rows.push_back(project_all(inst, model.imputer.scaler));

  if (train.task == Task::classification) {
    std::vector<Label> labels;
    for (const Instance& inst : train.instances) {
      require(inst.label.has_value(), "unlabelled training row");
      labels.push_back(*inst.label);
    }
    FuzzyArtmap artmap(train.feature_count(), config.artmap);
    artmap.train(rows, labels);
    model.predictor = std::move(artmap);
  } else {
    model.response_scaler = fit_response_scaler(train);
    std::vector<std::vector<double>> targets;
    for (const Instance& inst : train.instances)
      targets.push_back(model.response_scaler.scale_all(inst.response));
    Mlp init = Mlp::random(train.feature_count(), config.hidden_dim, train.output_count(),
                           config.train.seed);
    model.predictor = train_scg(std::move(init), rows, targets, config.train).net;
  }
  return model;
}

BaselinePrediction baseline_predict(const BaselineModel& model, const Instance& instance,
                                    const GaConfig& ga) {
  BaselinePrediction out;
  const ImputeResult filled = impute(model.imputer, instance, ga);
  out.objective = filled.objective;
  const std::vector<double> x = project_all(filled.completed, model.imputer.scaler);
  if (const auto* artmap = std::get_if<FuzzyArtmap>(&model.predictor)) {
    out.label = artmap->classify(x);
  } else {
    const Mlp& net = std::get<Mlp>(model.predictor);
    out.response = model.response_scaler.unscale_all(net.forward(x));
  }
  return out;
}

}  // namespace missingnet
