#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "missingnet/core_data.hpp"

namespace missingnet {

struct FuzzyArtmapConfig {
  double vigilance = 0.75;       // rho
  double learning_rate = 1.0;    // beta; 1 is fast learning
  double choice = 0.01;          // alpha in the choice function
  std::size_t max_epochs = 50;
  double match_tracking_epsilon = 0.001;

  void validate() const;
};

/// (x, 1 - x). Every component of x must lie in [0, 1].
std::vector<double> complement_code(std::span<const double> x);

struct CategoryNode {
  std::vector<double> weight;  // length 2d
  Label label = 0;
};

struct ArtmapTrainStats {
  std::size_t epochs = 0;
  bool stabilized = false;
};

/// Simplified Fuzzy ARTMAP: each category node maps directly to one class label.
class FuzzyArtmap {
 public:
  FuzzyArtmap() = default;
  FuzzyArtmap(std::size_t input_dim, FuzzyArtmapConfig config);

  std::size_t input_dim() const noexcept { return input_dim_; }
  const FuzzyArtmapConfig& config() const noexcept { return config_; }
  const std::vector<CategoryNode>& nodes() const noexcept { return nodes_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  bool trained() const noexcept { return !nodes_.empty(); }

  /// Presents the samples in order, epoch after epoch, until an epoch changes no
  /// weight and commits no node, or max_epochs is reached. Training is
  /// incremental: calling it again continues from the current nodes.
  ArtmapTrainStats train(std::span<const std::vector<double>> inputs, std::span<const Label> labels);

  /// One presentation. Returns true if a weight changed or a node was committed.
  bool learn(std::span<const double> input, Label label);

  /// Label of the node with the largest choice value; ties go to the oldest node.
  Label classify(std::span<const double> input) const;

  /// Rebuilds a model from stored nodes (deserialization).
  static FuzzyArtmap from_nodes(std::size_t input_dim, FuzzyArtmapConfig config,
                                std::vector<CategoryNode> nodes);

 private:
  std::vector<double> coded_checked(std::span<const double> input) const;

  std::size_t input_dim_ = 0;
  FuzzyArtmapConfig config_;
  std::vector<CategoryNode> nodes_;
};

}  // namespace missingnet
