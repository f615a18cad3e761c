#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "missingnet/error.hpp"
#include "missingnet/harness.hpp"

namespace missingnet {
namespace {

using Clock = std::chrono::steady_clock;

LatencyStats latency_of(const std::vector<InstanceRecord>& records) {
  LatencyStats stats;
  if (records.empty()) return stats;
  std::vector<double> seconds;
  seconds.reserve(records.size());
  for (const InstanceRecord& r : records) seconds.push_back(r.seconds);
  for (double s : seconds) stats.total += s;
  stats.mean = stats.total / static_cast<double>(seconds.size());
  std::sort(seconds.begin(), seconds.end());
  const std::size_t mid = seconds.size() / 2;
  stats.median = seconds.size() % 2 ? seconds[mid] : 0.5 * (seconds[mid - 1] + seconds[mid]);
  return stats;
}

using Predictor = std::function<void(std::size_t row, const Instance&, InstanceRecord&)>;

MethodReport replay(const std::string& name, const Dataset& stream, std::size_t passes,
                    const Predictor& predict) {
  MethodReport method;
  method.name = name;
  method.records.resize(stream.size());
  for (std::size_t pass = 0; pass < std::max<std::size_t>(passes, 1); ++pass) {
    for (std::size_t r = 0; r < stream.size(); ++r) {
      const Instance& inst = stream.instances[r];
      InstanceRecord record;
      record.row = r;
      record.missing = inst.missing_indices();
      const auto start = Clock::now();
      try {
        predict(r, inst, record);
        record.answered = true;
      } catch (const Error& e) {
        if (e.category() != ErrorCategory::no_usable_member) throw;
        record.answered = false;
      }
      const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
      if (pass == 0) {
        record.seconds = seconds;
        method.records[r] = std::move(record);
      } else {
        method.records[r].seconds = std::min(method.records[r].seconds, seconds);
      }
    }
  }
  return method;
}

std::string fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

}  // namespace

const MethodReport* RunReport::method(const std::string& name) const {
  for (const MethodReport& m : methods)
    if (m.name == name) return &m;
  return nullptr;
}

void score_method(const RunReport& report, MethodReport& method) {
  const std::size_t n = method.records.size();
  method.answered = 0;
  for (const InstanceRecord& r : method.records) method.answered += r.answered ? 1 : 0;
  method.unanswerable = n - method.answered;
  method.output_scores.clear();
  if (n == 0) return;

  if (report.task == Task::classification) {
    std::size_t correct = 0;
    for (const InstanceRecord& r : method.records)
      if (r.answered && r.label == report.truth_labels.at(r.row)) ++correct;
    method.score = 100.0 * static_cast<double>(correct) / static_cast<double>(n);
    method.answered_score =
        method.answered ? 100.0 * static_cast<double>(correct) / static_cast<double>(method.answered) : 0.0;
  } else {
    const std::size_t outputs = report.target_names.size();
    std::vector<std::size_t> within(outputs, 0);
    for (const InstanceRecord& r : method.records) {
      if (!r.answered) continue;
      for (std::size_t k = 0; k < outputs; ++k)
        if (within_tolerance(r.response.at(k), report.truth_responses.at(r.row).at(k), report.tolerance,
                             report.abs_floor))
          ++within[k];
    }
    std::size_t total = 0;
    for (std::size_t k = 0; k < outputs; ++k) {
      total += within[k];
      method.output_scores.push_back(100.0 * static_cast<double>(within[k]) / static_cast<double>(n));
    }
    const double cells = static_cast<double>(n * outputs);
    method.score = 100.0 * static_cast<double>(total) / cells;
    method.answered_score =
        method.answered ? 100.0 * static_cast<double>(total) / static_cast<double>(method.answered * outputs)
                        : 0.0;
  }
  method.latency = latency_of(method.records);
}

RunReport stream_eval(const EnsembleModel* ensemble, const BaselineModel* baseline,
                      const Dataset& test, const MissingnessSpec& spec, const StreamOptions& options) {
  require(ensemble || baseline, "stream evaluation needs at least one model");
  require(!test.instances.empty(), "stream evaluation needs test data");
  const std::vector<std::string>& features = ensemble ? ensemble->feature_names : baseline->feature_names;
  require(test.feature_names == features, "test data features differ from the model's");
  if (ensemble && baseline)
    require(ensemble->config.task == baseline->task, "ensemble and baseline solve different tasks");

  RunReport report;
  report.task = test.task;
  report.missingness = spec;
  report.tolerance = options.tolerance;
  report.abs_floor = options.abs_floor;

  Dataset aligned = test;
  if (test.task == Task::classification) {
    align_labels(aligned, ensemble ? ensemble->class_labels : baseline->class_labels);
    if (ensemble && baseline)
      require(ensemble->class_labels == baseline->class_labels, "models use different label vocabularies");
    report.class_labels = aligned.class_labels;
  } else {
    report.target_names = ensemble ? ensemble->target_names : baseline->target_names;
  }
  for (const Instance& inst : aligned.instances) {
    if (test.task == Task::classification) {
      require(inst.label.has_value(), "test rows need labels");
      report.truth_labels.push_back(*inst.label);
    } else {
      require(inst.response.size() == report.target_names.size(), "test rows need every response");
      report.truth_responses.push_back(inst.response);
    }
  }

  const Dataset stream = inject_missing(aligned, spec);

  if (ensemble) {
    require(ensemble->config.task == test.task, "ensemble task differs from the test data");
    MethodReport m = replay("ensemble", stream, options.timing_passes,
                            [&](std::size_t, const Instance& inst, InstanceRecord& rec) {
                              if (test.task == Task::classification) {
                                VoteDiagnostics diag;
                                rec.label = classify(*ensemble, inst, &diag);
                                rec.usable = diag.usable;
                                rec.committee = diag.committee;
                              } else {
                                RegressionDiagnostics diag;
                                rec.response = regress(*ensemble, inst, &diag);
                                rec.usable = diag.usable;
                              }
                            });
    report.methods.push_back(std::move(m));
    report.committee_curve = ensemble->committee_curve;
    report.committee_size = ensemble->committee_size;
    report.metadata["ensemble"] = {{"n_avail", ensemble->config.n_avail},
                                   {"members", ensemble->members.size()},
                                   {"committee_size", ensemble->committee_size}};
  }

  if (baseline) {
    require(baseline->task == test.task, "baseline task differs from the test data");
    MethodReport m = replay("nn_ga", stream, options.timing_passes,
                            [&](std::size_t row, const Instance& inst, InstanceRecord& rec) {
                              GaConfig ga = options.ga;
                              ga.seed = mix_seed(options.ga.seed, row);
                              const BaselinePrediction p = baseline_predict(*baseline, inst, ga);
                              rec.label = p.label;
                              rec.response = p.response;
                              rec.objective = p.objective;
                            });
    report.methods.push_back(std::move(m));
    report.metadata["nn_ga"] = {
        {"pipeline", test.task == Task::classification
                         ? "GA imputation on the autoencoder, then one full-feature fuzzy ARTMAP"
                         : "GA imputation on the autoencoder, then one full-feature MLP"},
        {"autoencoder_hidden", baseline->imputer.autoencoder.hidden_dim()},
        {"population", options.ga.population_size},
        {"generations", options.ga.generations},
        {"crossover_rate", options.ga.crossover_rate},
        {"mutation_rate", options.ga.mutation_rate}};
  }

  for (MethodReport& m : report.methods) score_method(report, m);
  return report;
}

nlohmann::json report_to_json(const RunReport& report, bool include_timing) {
  using nlohmann::json;
  json out;
  out["task"] = task_name(report.task);
  const MissingnessSpec& s = report.missingness;
  out["missingness"] = {{"mode", missing_mode_name(s.mode)}, {"count", s.count}, {"seed", s.seed}};
  if (s.probability) out["missingness"]["probability"] = *s.probability;
  if (s.mode == MissingMode::mar)
    out["missingness"].update({{"driver", s.driver}, {"threshold", s.threshold}, {"victim", s.victim}});
  if (report.task == Task::classification) {
    out["class_labels"] = report.class_labels;
    out["metric"] = "accuracy_percent";
  } else {
    out["target_names"] = report.target_names;
    out["metric"] = "tolerance_accuracy_percent";
    out["tolerance"] = report.tolerance;
    out["abs_floor"] = report.abs_floor;
  }
  if (!report.committee_curve.empty()) {
    out["committee_curve"] = report.committee_curve;
    out["committee_size"] = report.committee_size;
  }
  out["metadata"] = report.metadata;

  json methods = json::object();
  json timing = json::object();
  for (const MethodReport& m : report.methods) {
    json jm = {{"score", m.score},
               {"answered_score", m.answered_score},
               {"answered", m.answered},
               {"unanswerable", m.unanswerable},
               {"instances", m.records.size()}};
    if (!m.output_scores.empty()) jm["output_scores"] = m.output_scores;
    json log = json::array();
    for (const InstanceRecord& r : m.records) {
      json jr = {{"row", r.row}, {"missing", r.missing}, {"answered", r.answered}};
      if (r.answered) {
        if (report.task == Task::classification) jr["label"] = report.class_labels.at(r.label);
        else jr["prediction"] = r.response;
      }
      if (m.name == "ensemble") {
        jr["usable"] = r.usable;
        if (report.task == Task::classification) jr["committee"] = r.committee;
      } else {
        jr["objective"] = r.objective;
      }
      log.push_back(std::move(jr));
    }
    jm["log"] = std::move(log);
    methods[m.name] = std::move(jm);
    timing[m.name] = {{"total_s", m.latency.total}, {"mean_s", m.latency.mean}, {"median_s", m.latency.median}};
  }
  out["methods"] = std::move(methods);
  if (report.task == Task::classification) {
    json truth = json::array();
    for (Label l : report.truth_labels) truth.push_back(report.class_labels.at(l));
    out["truth"] = std::move(truth);
  } else {
    out["truth"] = report.truth_responses;
  }
  if (include_timing) out["timing"] = std::move(timing);
  return out;
}

std::string summary_table(const RunReport& report) {
  std::ostringstream out;
  auto row = [&](const std::string& name, const std::vector<std::string>& cells) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%-26s", name.c_str());
    out << buf;
    for (const std::string& c : cells) {
      std::snprintf(buf, sizeof(buf), "%14s", c.c_str());
      out << buf;
    }
    out << '\n';
  };
  std::vector<std::string> names, missing, answered, total_time, median_time;
  for (const MethodReport& m : report.methods) {
    names.push_back(m.name == "ensemble" ? "Ensemble" : "NN-GA");
    missing.push_back(report.missingness.mode == MissingMode::mcar && !report.missingness.probability
                          ? std::to_string(report.missingness.count)
                          : missing_mode_name(report.missingness.mode));
    answered.push_back(std::to_string(m.answered) + "/" + std::to_string(m.records.size()));
    total_time.push_back(fixed(m.latency.total, 4));
    median_time.push_back(fixed(m.latency.median * 1e6, 1));
  }
  row("", names);
  row("Number of missing", missing);
  if (report.task == Task::classification) {
    std::vector<std::string> acc;
    for (const MethodReport& m : report.methods) acc.push_back(fixed(m.score, 2));
    row("Accuracy (%)", acc);
  } else {
    for (std::size_t k = 0; k < report.target_names.size(); ++k) {
      std::vector<std::string> perf;
      for (const MethodReport& m : report.methods) perf.push_back(fixed(m.output_scores.at(k), 2));
      row(report.target_names[k] + " perf (%)", perf);
    }
  }
  row("Answered", answered);
  row("Run time (s)", total_time);
  row("Median latency (us)", median_time);
  return out.str();
}

}  // namespace missingnet
