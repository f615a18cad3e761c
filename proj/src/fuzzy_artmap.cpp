#include "missingnet/fuzzy_artmap.hpp"

#include <algorithm>
#include <numeric>

#include "missingnet/error.hpp"

namespace missingnet {
namespace {

double min_sum(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::min(a[k], b[k]);
  return s;
}

double l1(std::span<const double> a) { return std::accumulate(a.begin(), a.end(), 0.0); }

}  // namespace

void FuzzyArtmapConfig::validate() const {
  require(vigilance >= 0.0 && vigilance <= 1.0, "vigilance must lie in [0, 1]");
  require(learning_rate >= 0.0 && learning_rate <= 1.0, "learning rate must lie in [0, 1]");
  require(choice > 0.0, "choice parameter must be positive");
  require(match_tracking_epsilon > 0.0, "match tracking epsilon must be positive");
  require(max_epochs >= 1, "max_epochs must be at least 1");
}

std::vector<double> complement_code(std::span<const double> x) {
  std::vector<double> out(2 * x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] >= 0.0 && x[i] <= 1.0, "complement coding needs inputs in [0, 1]");
    out[i] = x[i];
    out[x.size() + i] = 1.0 - x[i];
  }
  return out;
}

FuzzyArtmap::FuzzyArtmap(std::size_t input_dim, FuzzyArtmapConfig config)
    : input_dim_(input_dim), config_(config) {
  require(input_dim >= 1, "ARTMAP input dimension must be positive");
  config_.validate();
}

FuzzyArtmap FuzzyArtmap::from_nodes(std::size_t input_dim, FuzzyArtmapConfig config,
                                    std::vector<CategoryNode> nodes) {
  FuzzyArtmap model(input_dim, config);
  for (const CategoryNode& node : nodes) {
    require(node.weight.size() == 2 * input_dim, "category weight has the wrong length");
    for (double w : node.weight) require(w >= 0.0 && w <= 1.0, "category weight outside [0, 1]");
  }
  model.nodes_ = std::move(nodes);
  return model;
}

std::vector<double> FuzzyArtmap::coded_checked(std::span<const double> input) const {
  require(input.size() == input_dim_,
          "ARTMAP input has dimension " + std::to_string(input.size()) + ", expected " +
              std::to_string(input_dim_));
  return complement_code(input);
}

bool FuzzyArtmap::learn(std::span<const double> input, Label label) {
  const std::vector<double> coded = coded_checked(input);
  const double coded_norm = l1(coded);

  struct Candidate {
    double choice;
    double overlap;
    std::size_t index;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(nodes_.size());
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const double overlap = min_sum(coded, nodes_[j].weight);
    candidates.push_back({overlap / (config_.choice + l1(nodes_[j].weight)), overlap, j});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.choice > b.choice; });

  double vigilance = config_.vigilance;
  for (const Candidate& c : candidates) {
    const double match = c.overlap / coded_norm;
    if (match < vigilance) continue;
    CategoryNode& node = nodes_[c.index];
    if (node.label != label) {
      // Match tracking.
      vigilance = match + config_.match_tracking_epsilon;
      continue;
    }
    bool changed = false;
    const double beta = config_.learning_rate;
    for (std::size_t k = 0; k < coded.size(); ++k) {
      const double fuzzy_and = std::min(coded[k], node.weight[k]);
      const double updated = beta == 1.0 ? fuzzy_and : beta * fuzzy_and + (1.0 - beta) * node.weight[k];
      if (updated != node.weight[k]) {
        node.weight[k] = updated;
        changed = true;
      }
    }
    return changed;
  }

  // An identical category with the same label already exists: the input is
  // contradicted by another label at this exact point, so a copy adds nothing.
  const bool duplicate = std::any_of(nodes_.begin(), nodes_.end(), [&](const CategoryNode& n) {
    return n.label == label && n.weight == coded;
  });
  if (duplicate) return false;
  nodes_.push_back({coded, label});
  return true;
}

ArtmapTrainStats FuzzyArtmap::train(std::span<const std::vector<double>> inputs,
                                    std::span<const Label> labels) {
  require(!inputs.empty(), "ARTMAP training needs at least one sample");
  require(inputs.size() == labels.size(), "ARTMAP inputs and labels differ in length");
  ArtmapTrainStats stats;
  while (stats.epochs < config_.max_epochs) {
    ++stats.epochs;
    bool changed = false;
    for (std::size_t s = 0; s < inputs.size(); ++s) changed |= learn(inputs[s], labels[s]);
    if (!changed) {
      stats.stabilized = true;
      break;
    }
  }
  return stats;
}

Label FuzzyArtmap::classify(std::span<const double> input) const {
  if (nodes_.empty()) fail(ErrorCategory::model_not_trained, "ARTMAP has no category nodes");
  const std::vector<double> coded = coded_checked(input);
  std::size_t best = 0;
  double best_choice = -1.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const double t = min_sum(coded, nodes_[j].weight) / (config_.choice + l1(nodes_[j].weight));
    if (t > best_choice) {
      best_choice = t;
      best = j;
    }
  }
  return nodes_[best].label;
}

}  // namespace missingnet
