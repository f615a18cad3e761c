#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "missingnet/core_data.hpp"
#include "missingnet/ensemble.hpp"
#include "missingnet/genetic.hpp"
#include "missingnet/imputer.hpp"
#include "missingnet/metrics.hpp"

namespace missingnet {

// ---------------------------------------------------------------------------
// Missingness injection

enum class MissingMode { mcar, mar };

const char* missing_mode_name(MissingMode mode) noexcept;
MissingMode parse_missing_mode(const std::string& text);

struct MissingnessSpec {
  MissingMode mode = MissingMode::mcar;
  std::size_t count = 0;              // MCAR: features masked per instance
  std::optional<double> probability;  // MCAR: per-cell probability instead of a count
  std::size_t driver = 0;             // MAR: victim is masked when driver < threshold
  double threshold = 0.0;
  std::size_t victim = 1;
  std::uint64_t seed = 0;
};

/// Masks cells of a complete dataset. Deterministic for a fixed seed.
Dataset inject_missing(const Dataset& dataset, const MissingnessSpec& spec);

// ---------------------------------------------------------------------------
// Synthetic data

struct SynthInfo {
  std::string description;
  nlohmann::json parameters;
};

/// classification: 10 redundant-pair features, 2 classes in overlapping boxes.
/// regression: 4 co-driven inputs with their own variation, 2 nonlinear outputs of those inputs.
Dataset synth_generate(Task kind, std::size_t rows, std::uint64_t seed, SynthInfo* info = nullptr);

// ---------------------------------------------------------------------------
// Imputation baseline: autoencoder + GA, then one full-feature model

struct BaselineConfig {
  ImputerTrainConfig imputer;
  FuzzyArtmapConfig artmap;
  std::size_t hidden_dim = 5;
  TrainConfig train;
};

struct BaselineModel {
  Task task = Task::classification;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_labels;
  std::vector<std::string> target_names;
  ImputerModel imputer;           // its scaler also feeds the predictor
  FeatureScaler response_scaler;  // regression only
  MemberModel predictor;
};

BaselineModel train_baseline(const Dataset& train, const BaselineConfig& config);

struct BaselinePrediction {
  Label label = 0;
  std::vector<double> response;
  double objective = 0.0;  // imputation objective at the chosen estimate
};

BaselinePrediction baseline_predict(const BaselineModel& model, const Instance& instance,
                                    const GaConfig& ga);

// ---------------------------------------------------------------------------
// Streaming evaluation

struct InstanceRecord {
  std::size_t row = 0;
  std::vector<std::size_t> missing;
  bool answered = false;
  Label label = 0;                // classification prediction
  std::vector<double> response;   // regression prediction
  std::size_t usable = 0;         // ensemble only
  std::size_t committee = 0;      // ensemble classification only
  double objective = 0.0;         // baseline only
  double seconds = 0.0;
};

struct LatencyStats {
  double total = 0.0;
  double mean = 0.0;
  double median = 0.0;
};

struct MethodReport {
  std::string name;
  std::vector<InstanceRecord> records;
  double score = 0.0;                 // accuracy (%) or tolerance accuracy (%)
  double answered_score = 0.0;        // same, over answered instances only
  std::vector<double> output_scores;  // regression: per output
  std::size_t answered = 0;
  std::size_t unanswerable = 0;
  LatencyStats latency;
};

struct StreamOptions {
  GaConfig ga;
  double tolerance = 0.2;
  double abs_floor = 1e-6;
  /// Each method is replayed this many times; a record keeps its fastest pass.
  std::size_t timing_passes = 1;
};

struct RunReport {
  Task task = Task::classification;
  std::vector<std::string> class_labels;
  std::vector<std::string> target_names;
  std::vector<Label> truth_labels;
  std::vector<std::vector<double>> truth_responses;
  MissingnessSpec missingness;
  double tolerance = 0.2;
  double abs_floor = 1e-6;
  std::vector<MethodReport> methods;
  std::vector<double> committee_curve;
  std::size_t committee_size = 0;
  nlohmann::json metadata;

  const MethodReport* method(const std::string& name) const;
};

/// Replays `test` one instance at a time through each given model, after
/// injecting missingness. Instances nobody can answer are counted, not fatal.
RunReport stream_eval(const EnsembleModel* ensemble, const BaselineModel* baseline,
                      const Dataset& test, const MissingnessSpec& spec, const StreamOptions& options);

/// Recomputes a method's scores from its per-instance records.
void score_method(const RunReport& report, MethodReport& method);

nlohmann::json report_to_json(const RunReport& report, bool include_timing = true);
/// Plain-text table: one column per method, rows for missing count, accuracy and run time.
std::string summary_table(const RunReport& report);

}  // namespace missingnet
