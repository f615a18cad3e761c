#include "missingnet/ensemble.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <optional>

#include "missingnet/error.hpp"
#include "missingnet/metrics.hpp"

namespace missingnet {
namespace {

std::string describe(const FeatureSubset& subset, const std::vector<std::string>& names) {
  std::string out = "{";
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (k) out += ",";
    out += subset[k] < names.size() ? names[subset[k]] : std::to_string(subset[k]);
  }
  return out + "}";
}

std::vector<double> columns(const std::vector<double>& row, const FeatureSubset& subset) {
  std::vector<double> out;
  out.reserve(subset.size());
  for (std::size_t i : subset.indices()) out.push_back(row[i]);
  return out;
}

std::vector<std::size_t> by_weight(const std::vector<EnsembleMember>& members) {
  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return members[a].weight > members[b].weight;
  });
  return order;
}

struct MemberOutcome {
  MemberModel model;
  double error = 0.0;
  std::vector<Label> validation_votes;
  std::optional<Error> failure;
};

}  // namespace

std::uint64_t count_networks(std::size_t n, std::size_t n_avail) {
  require(n_avail >= 1 && n_avail <= n,
          "n_avail must lie in [1, n]; got n_avail=" + std::to_string(n_avail) +
              ", n=" + std::to_string(n));
  const std::size_t k = std::min(n_avail, n - n_avail);
  unsigned __int128 result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    require(result <= static_cast<unsigned __int128>(UINT64_MAX),
            "C(" + std::to_string(n) + ", " + std::to_string(n_avail) + ") overflows 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<FeatureSubset> enumerate_subsets(std::size_t n, std::size_t n_avail) {
  const std::uint64_t total = count_networks(n, n_avail);
  std::vector<FeatureSubset> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<std::size_t> idx(n_avail);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    out.emplace_back(idx, n);
    // Advance to the next combination in lexicographic order.
    std::size_t pos = n_avail;
    while (pos > 0 && idx[pos - 1] == n - n_avail + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t q = pos; q < n_avail; ++q) idx[q] = idx[q - 1] + 1;
  }
  return out;
}

std::vector<double> ensemble_weights(std::span<const double> errors) {
  require(!errors.empty(), "ensemble weights need at least one member");
  double total = 0.0;
  for (double e : errors) {
    require(e >= 0.0 && e <= 1.0, "member errors must lie in [0, 1]");
    total += 1.0 - e;
  }
  std::vector<double> alpha(errors.size());
  if (!(total > 0.0)) {
    std::fill(alpha.begin(), alpha.end(), 1.0 / static_cast<double>(errors.size()));
    return alpha;
  }
  for (std::size_t i = 0; i < errors.size(); ++i) alpha[i] = (1.0 - errors[i]) / total;
  return alpha;
}

std::size_t select_committee_size(std::span<const double> accuracy_by_odd_size) {
  require(!accuracy_by_odd_size.empty(), "no committee accuracies to choose from");
  std::size_t k = 0;
  while (k + 1 < accuracy_by_odd_size.size() &&
         accuracy_by_odd_size[k + 1] > accuracy_by_odd_size[k])
    ++k;
  return 2 * k + 1;
}

void EnsembleConfig::validate(std::size_t feature_count) const {
  const std::uint64_t members = count_networks(feature_count, n_avail);
  require(members <= member_cap, "ensemble would need " + std::to_string(members) +
                                     " members, above the cap of " + std::to_string(member_cap));
  if (task == Task::classification) artmap.validate();
  else require(hidden_dim >= 1, "hidden layer must have at least one unit");
  train.validate();
  require(tolerance >= 0.0 && abs_floor >= 0.0, "tolerances must be non-negative");
}

Label weighted_vote(std::span<const double> weights, std::span<const Label> votes,
                    std::size_t label_count, std::vector<double>* vote_mass) {
  require(weights.size() == votes.size() && !votes.empty(), "weighted vote needs voters");
  std::vector<double> mass(label_count, 0.0);
  for (std::size_t v = 0; v < votes.size(); ++v) mass.at(votes[v]) += weights[v];
  // Scan labels in order of their highest-weight voter so ties resolve to it.
  Label best = votes.front();
  for (Label candidate : votes)
    if (mass[candidate] > mass[best]) best = candidate;
  if (vote_mass) *vote_mass = std::move(mass);
  return best;
}

EnsembleModel train_ensemble(const Dataset& train, const Dataset& validation,
                             const EnsembleConfig& config) {
  require(train.task == config.task && validation.task == config.task,
          "dataset task does not match the ensemble task");
  require(!train.instances.empty() && !validation.instances.empty(),
          "ensemble training needs training and validation data");
  require(train.is_complete() && validation.is_complete(),
          "ensemble training and validation data must be complete");
  require(validation.feature_count() == train.feature_count(),
          "training and validation data have different features");
  train.validate();
  validation.validate();
  const std::size_t n = train.feature_count();
  config.validate(n);
  if (config.task == Task::classification) {
    require(validation.class_labels == train.class_labels,
            "validation labels use a different vocabulary");
    for (const Instance& inst : train.instances) require(inst.label.has_value(), "unlabelled training row");
    for (const Instance& inst : validation.instances) require(inst.label.has_value(), "unlabelled validation row");
  }

  EnsembleModel model;
  model.config = config;
  model.feature_names = train.feature_names;
  model.class_labels = train.class_labels;
  model.target_names = train.target_names;
  model.scaler = fit_scaler(train);

  std::vector<std::vector<double>> train_rows, val_rows, train_targets;
  for (const Instance& inst : train.instances) train_rows.push_back(project_all(inst, model.scaler));
  for (const Instance& inst : validation.instances) val_rows.push_back(project_all(inst, model.scaler));

  std::vector<Label> train_labels;
  std::vector<double> val_truth;  // regression: flattened responses
  if (config.task == Task::classification) {
    for (const Instance& inst : train.instances) train_labels.push_back(*inst.label);
  } else {
    model.response_scaler = fit_response_scaler(train);
    for (const Instance& inst : train.instances)
      train_targets.push_back(model.response_scaler.scale_all(inst.response));
    for (const Instance& inst : validation.instances)
      val_truth.insert(val_truth.end(), inst.response.begin(), inst.response.end());
  }

  const std::vector<FeatureSubset> subsets = enumerate_subsets(n, config.n_avail);
  std::vector<MemberOutcome> outcomes(subsets.size());

  auto build = [&](std::size_t m) {
    MemberOutcome& out = outcomes[m];
    try {
      const FeatureSubset& subset = subsets[m];
      std::vector<std::vector<double>> x;
      x.reserve(train_rows.size());
      for (const auto& row : train_rows) x.push_back(columns(row, subset));

      if (config.task == Task::classification) {
        FuzzyArtmap artmap(subset.size(), config.artmap);
        artmap.train(x, train_labels);
        std::size_t wrong = 0;
        out.validation_votes.reserve(val_rows.size());
        for (std::size_t v = 0; v < val_rows.size(); ++v) {
          const Label vote = artmap.classify(columns(val_rows[v], subset));
          out.validation_votes.push_back(vote);
          if (vote != *validation.instances[v].label) ++wrong;
        }
        out.error = static_cast<double>(wrong) / static_cast<double>(val_rows.size());
        out.model = std::move(artmap);
      } else {
        TrainConfig tc = config.train;
        tc.seed = mix_seed(config.train.seed, m);
        Mlp init = Mlp::random(subset.size(), config.hidden_dim, train.output_count(), tc.seed);
        Mlp net = train_scg(std::move(init), x, train_targets, tc).net;
        std::vector<double> predicted;
        predicted.reserve(val_truth.size());
        for (const auto& row : val_rows) {
          const std::vector<double> y = model.response_scaler.unscale_all(net.forward(columns(row, subset)));
          predicted.insert(predicted.end(), y.begin(), y.end());
        }
        out.error = 1.0 - tolerance_accuracy(predicted, val_truth, config.tolerance, config.abs_floor) / 100.0;
        out.model = std::move(net);
      }
    } catch (const Error& e) {
      out.failure = e;
    } catch (const std::exception& e) {
      out.failure = Error(ErrorCategory::invalid_input, e.what());
    }
  };

  const auto count = static_cast<std::ptrdiff_t>(subsets.size());
  if (config.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t m = 0; m < count; ++m) build(static_cast<std::size_t>(m));
  } else {
    for (std::ptrdiff_t m = 0; m < count; ++m) build(static_cast<std::size_t>(m));
  }

  std::vector<double> errors;
  for (std::size_t m = 0; m < subsets.size(); ++m) {
    if (outcomes[m].failure)
      fail(outcomes[m].failure->category(), "member " + describe(subsets[m], train.feature_names) +
                                                " failed to train: " + outcomes[m].failure->what());
    errors.push_back(outcomes[m].error);
  }
  const std::vector<double> alpha = ensemble_weights(errors);
  for (std::size_t m = 0; m < subsets.size(); ++m)
    model.members.push_back({subsets[m], std::move(outcomes[m].model), alpha[m], errors[m]});

  if (config.task == Task::classification) {
    const std::vector<std::size_t> ranked = by_weight(model.members);
    std::vector<double> weights;
    std::vector<Label> votes;
    for (std::size_t size = 1; size <= ranked.size(); size += 2) {
      std::size_t correct = 0;
      for (std::size_t v = 0; v < val_rows.size(); ++v) {
        weights.clear();
        votes.clear();
        for (std::size_t c = 0; c < size; ++c) {
          weights.push_back(model.members[ranked[c]].weight);
          votes.push_back(outcomes[ranked[c]].validation_votes[v]);
        }
        if (weighted_vote(weights, votes, model.class_labels.size()) == *validation.instances[v].label)
          ++correct;
      }
      model.committee_curve.push_back(100.0 * static_cast<double>(correct) /
                                      static_cast<double>(val_rows.size()));
    }
    model.committee_size = select_committee_size(model.committee_curve);
  }
  return model;
}

std::vector<std::size_t> usable_members(const EnsembleModel& model, const Instance& instance) {
  std::vector<std::size_t> usable;
  for (std::size_t m = 0; m < model.members.size(); ++m)
    if (model.members[m].subset.available_in(instance)) usable.push_back(m);
  std::stable_sort(usable.begin(), usable.end(), [&](std::size_t a, std::size_t b) {
    return model.members[a].weight > model.members[b].weight;
  });
  return usable;
}

Label member_classify(const EnsembleModel& model, std::size_t member, const Instance& instance) {
  const EnsembleMember& mem = model.members.at(member);
  const auto* artmap = std::get_if<FuzzyArtmap>(&mem.model);
  if (!artmap) fail(ErrorCategory::invalid_input, "member is not a classifier");
  return artmap->classify(project(instance, mem.subset, model.scaler));
}

std::vector<double> member_regress(const EnsembleModel& model, std::size_t member,
                                   const Instance& instance) {
  const EnsembleMember& mem = model.members.at(member);
  const auto* net = std::get_if<Mlp>(&mem.model);
  if (!net) fail(ErrorCategory::invalid_input, "member is not a regressor");
  return model.response_scaler.unscale_all(net->forward(project(instance, mem.subset, model.scaler)));
}

Label classify(const EnsembleModel& model, const Instance& instance, VoteDiagnostics* diagnostics) {
  require(model.config.task == Task::classification, "ensemble is not a classifier");
  require(instance.size() == model.feature_count(), "instance has the wrong number of features");
  const std::vector<std::size_t> usable = usable_members(model, instance);
  if (usable.empty())
    fail(ErrorCategory::no_usable_member,
         "every ensemble member needs a missing feature (" + std::to_string(instance.missing_count()) +
             " missing)");
  std::size_t size = std::min(std::max<std::size_t>(model.committee_size, 1), usable.size());
  if (size % 2 == 0) --size;

  std::vector<double> weights(size);
  std::vector<Label> votes(size);
  for (std::size_t c = 0; c < size; ++c) {
    weights[c] = model.members[usable[c]].weight;
    votes[c] = member_classify(model, usable[c], instance);
  }
  std::vector<double> mass;
  const Label label = weighted_vote(weights, votes, model.class_labels.size(), &mass);
  if (diagnostics) *diagnostics = {usable.size(), size, std::move(mass)};
  return label;
}

std::vector<double> regress(const EnsembleModel& model, const Instance& instance,
                            RegressionDiagnostics* diagnostics) {
  require(model.config.task == Task::regression, "ensemble is not a regressor");
  require(instance.size() == model.feature_count(), "instance has the wrong number of features");
  const std::vector<std::size_t> usable = usable_members(model, instance);
  if (usable.empty())
    fail(ErrorCategory::no_usable_member,
         "every ensemble member needs a missing feature (" + std::to_string(instance.missing_count()) +
             " missing)");

  double total = 0.0;
  for (std::size_t m : usable) total += model.members[m].weight;
  std::vector<double> renorm;
  for (std::size_t m : usable)
    renorm.push_back(total > 0.0 ? model.members[m].weight / total
                                 : 1.0 / static_cast<double>(usable.size()));

  std::vector<double> y(model.target_names.size(), 0.0);
  for (std::size_t u = 0; u < usable.size(); ++u) {
    const std::vector<double> f = member_regress(model, usable[u], instance);
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += renorm[u] * f[k];
  }
  if (diagnostics) *diagnostics = {usable.size(), usable, std::move(renorm)};
  return y;
}

}  // namespace missingnet
