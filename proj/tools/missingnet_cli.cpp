#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "missingnet/csv.hpp"
#include "missingnet/ensemble.hpp"
#include "missingnet/error.hpp"
#include "missingnet/harness.hpp"
#include "missingnet/serialize.hpp"

using namespace missingnet;
namespace fs = std::filesystem;

namespace {

struct SynthArgs {
  std::string task = "classification";
  std::size_t rows = 6000;
  std::uint64_t seed = 0;
  std::string out;
  std::string info;
};

struct TrainArgs {
  std::string task = "classification";
  std::string data;
  std::vector<std::string> targets;
  double train_fraction = 0.5;
  std::size_t n_avail = 0;
  double vigilance = 0.75;
  std::size_t hidden = 5;
  std::size_t cycles = 1200;
  std::size_t ae_hidden = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool skip_baseline = false;
};

struct GaArgs {
  std::size_t population = 20;
  std::size_t generations = 25;
  double crossover = 0.1;
  double mutation = 0.05;
  std::uint64_t seed = 0;

  GaConfig config() const {
    GaConfig ga;
    ga.population_size = population;
    ga.generations = generations;
    ga.crossover_rate = crossover;
    ga.mutation_rate = mutation;
    ga.seed = seed;
    return ga;
  }
};

struct ImputeArgs {
  std::string model;
  std::string in;
  std::string out;
  GaArgs ga;
};

struct StreamArgs {
  std::string ensemble;
  std::string baseline;
  std::string data;
  std::string mode = "mcar";
  std::size_t count = 1;
  double probability = -1.0;
  std::size_t driver = 0;
  std::size_t victim = 1;
  double threshold = 0.0;
  std::uint64_t seed = 0;
  double tolerance = 0.2;
  std::size_t timing_passes = 1;
  std::string report;
  GaArgs ga;
};

void add_ga_options(CLI::App* cmd, GaArgs& ga) {
  cmd->add_option("--population", ga.population, "GA population size")->capture_default_str();
  cmd->add_option("--generations", ga.generations, "GA generations, initial population included")
      ->capture_default_str();
  cmd->add_option("--crossover", ga.crossover, "per-gene crossover probability")->capture_default_str();
  cmd->add_option("--mutation", ga.mutation, "per-gene mutation probability")->capture_default_str();
  cmd->add_option("--ga-seed", ga.seed, "GA base seed")->capture_default_str();
}

// Reads a CSV laid out like the model's training data.
Dataset read_for_model(const std::string& path, Task task, const std::vector<std::string>& features,
                       const std::vector<std::string>& targets) {
  CsvOptions opt;
  opt.task = task;
  opt.targets = targets;
  Dataset ds = read_csv_file(path, opt);
  require(ds.feature_names == features, "'" + path + "' does not have the model's feature columns");
  return ds;
}

int run_synth(const SynthArgs& a) {
  SynthInfo info;
  const Dataset ds = synth_generate(parse_task(a.task), a.rows, a.seed, &info);
  write_csv_file(a.out, ds);
  if (!a.info.empty()) write_json_file(a.info, {{"description", info.description}, {"parameters", info.parameters}});
  std::printf("wrote %zu rows x %zu features to %s\n", ds.size(), ds.feature_count(), a.out.c_str());
  return 0;
}

int run_train(const TrainArgs& a) {
  const Task task = parse_task(a.task);
  CsvOptions opt;
  opt.task = task;
  opt.targets = a.targets;
  const Dataset data = read_csv_file(a.data, opt);
  require(data.is_complete(), "training data must not contain missing cells");
  auto [train, val] = split(data, a.train_fraction, a.seed);

  EnsembleConfig ecfg;
  ecfg.task = task;
  ecfg.n_avail = a.n_avail ? a.n_avail : (data.feature_count() > 1 ? data.feature_count() - 1 : 1);
  ecfg.artmap.vigilance = a.vigilance;
  ecfg.hidden_dim = a.hidden;
  ecfg.train.max_cycles = a.cycles;
  ecfg.train.seed = a.seed;
  const EnsembleModel ens = train_ensemble(train, val, ecfg);
  save_ensemble(ens, (fs::path(a.out) / "ensemble").string());
  std::printf("ensemble: %zu members over %zu-feature subsets", ens.members.size(), ecfg.n_avail);
  if (task == Task::classification) std::printf(", committee size %zu", ens.committee_size);
  std::printf("\n");

  if (!a.skip_baseline) {
    BaselineConfig bcfg;
    bcfg.imputer.hidden_dim = a.ae_hidden;
    bcfg.imputer.train.max_cycles = a.cycles;
    bcfg.imputer.train.seed = a.seed;
    bcfg.artmap.vigilance = a.vigilance;
    bcfg.hidden_dim = a.hidden;
    bcfg.train.max_cycles = a.cycles;
    bcfg.train.seed = a.seed;
    const BaselineModel base = train_baseline(data, bcfg);
    save_baseline(base, (fs::path(a.out) / "baseline.json").string());
    std::printf("baseline: autoencoder %zu-%zu-%zu\n", base.imputer.autoencoder.input_dim(),
                base.imputer.autoencoder.hidden_dim(), base.imputer.autoencoder.output_dim());
  }
  std::printf("models written under %s\n", a.out.c_str());
  return 0;
}

std::string baseline_path(const std::string& path) {
  return fs::is_directory(path) ? (fs::path(path) / "baseline.json").string() : path;
}

int run_impute(const ImputeArgs& a) {
  const BaselineModel model = load_baseline(baseline_path(a.model));
  Dataset ds = read_for_model(a.in, model.task, model.feature_names,
                              model.task == Task::regression ? model.target_names : std::vector<std::string>{});
  const std::vector<ImputeResult> results = impute_batch(model.imputer, ds.instances, a.ga.config(), Exec::parallel);
  ExtraColumn objective{"objective", {}};
  std::size_t filled = 0;
  for (std::size_t r = 0; r < ds.size(); ++r) {
    filled += ds.instances[r].missing_count();
    ds.instances[r].features = results[r].completed.features;
    ds.instances[r].mask = results[r].completed.mask;
    objective.values.push_back(results[r].objective);
  }
  write_csv_file(a.out, ds, {objective});
  std::printf("imputed %zu cells in %zu rows; wrote %s\n", filled, ds.size(), a.out.c_str());
  return 0;
}

int run_stream(const StreamArgs& a) {
  require(!a.ensemble.empty() || !a.baseline.empty(), "give --ensemble, --baseline or both");
  std::optional<EnsembleModel> ens;
  std::optional<BaselineModel> base;
  if (!a.ensemble.empty()) ens = load_ensemble(a.ensemble);
  if (!a.baseline.empty()) base = load_baseline(baseline_path(a.baseline));
  const Task task = ens ? ens->config.task : base->task;
  const auto& features = ens ? ens->feature_names : base->feature_names;
  const auto& targets = ens ? ens->target_names : base->target_names;
  const Dataset test = read_for_model(a.data, task, features, task == Task::regression ? targets : std::vector<std::string>{});

  MissingnessSpec spec;
  spec.mode = parse_missing_mode(a.mode);
  spec.count = a.count;
  if (a.probability >= 0.0) spec.probability = a.probability;
  spec.driver = a.driver;
  spec.victim = a.victim;
  spec.threshold = a.threshold;
  spec.seed = a.seed;
  StreamOptions opt;
  opt.ga = a.ga.config();
  opt.tolerance = a.tolerance;
  opt.timing_passes = a.timing_passes;

  const RunReport report = stream_eval(ens ? &*ens : nullptr, base ? &*base : nullptr, test, spec, opt);
  if (!a.report.empty()) write_json_file(a.report, report_to_json(report));
  std::cout << summary_table(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Missing-data classification and regression with feature-subset ensembles"};
  app.require_subcommand(1);

  SynthArgs synth;
  CLI::App* s = app.add_subcommand("synth", "generate a synthetic dataset as CSV");
  s->add_option("--task", synth.task, "classification or regression")->capture_default_str();
  s->add_option("--rows", synth.rows, "number of rows")->capture_default_str();
  s->add_option("--seed", synth.seed, "random seed")->capture_default_str();
  s->add_option("--out", synth.out, "output CSV")->required();
  s->add_option("--info", synth.info, "also write the generator parameters as JSON");

  TrainArgs train;
  CLI::App* t = app.add_subcommand("train", "train the ensemble and the NN-GA baseline");
  t->add_option("--task", train.task, "classification or regression")->capture_default_str();
  t->add_option("--data", train.data, "complete training CSV")->required();
  t->add_option("--target", train.targets, "target column name(s); default: last column")->delimiter(',');
  t->add_option("--train-fraction", train.train_fraction, "share of rows used to fit members; rest validates")
      ->capture_default_str();
  t->add_option("--n-avail", train.n_avail, "features per member (default n - 1)");
  t->add_option("--vigilance", train.vigilance, "fuzzy ARTMAP vigilance")->capture_default_str();
  t->add_option("--hidden", train.hidden, "MLP hidden units (regression)")->capture_default_str();
  t->add_option("--cycles", train.cycles, "SCG training cycles")->capture_default_str();
  t->add_option("--ae-hidden", train.ae_hidden, "autoencoder hidden units (default ceil(n/2))");
  t->add_option("--seed", train.seed, "random seed")->capture_default_str();
  t->add_option("--out", train.out, "output directory")->required();
  t->add_flag("--no-baseline", train.skip_baseline, "train only the ensemble");

  ImputeArgs impute;
  CLI::App* i = app.add_subcommand("impute", "fill missing cells with the autoencoder and GA");
  i->add_option("--model", impute.model, "baseline.json, or the directory written by train")->required();
  i->add_option("--in", impute.in, "CSV with missing cells")->required();
  i->add_option("--out", impute.out, "completed CSV (adds an objective column)")->required();
  add_ga_options(i, impute.ga);

  StreamArgs stream;
  CLI::App* r = app.add_subcommand("stream", "replay a test set one instance at a time and score");
  r->add_option("--ensemble", stream.ensemble, "ensemble directory");
  r->add_option("--baseline", stream.baseline, "baseline.json, or the directory written by train");
  r->add_option("--data", stream.data, "complete test CSV")->required();
  r->add_option("--missing-mode", stream.mode, "mcar or mar")->capture_default_str();
  r->add_option("--missing-count", stream.count, "MCAR: features removed per instance")->capture_default_str();
  r->add_option("--missing-prob", stream.probability, "MCAR: per-cell probability instead of a count");
  r->add_option("--mar-driver", stream.driver, "MAR: index of the driving feature")->capture_default_str();
  r->add_option("--mar-threshold", stream.threshold, "MAR: victim is removed when driver < threshold");
  r->add_option("--mar-victim", stream.victim, "MAR: index of the removed feature")->capture_default_str();
  r->add_option("--seed", stream.seed, "missingness seed")->capture_default_str();
  r->add_option("--tolerance", stream.tolerance, "relative tolerance for regression scoring")
      ->capture_default_str();
  r->add_option("--timing-passes", stream.timing_passes, "replays per method; fastest time per instance kept")
      ->capture_default_str();
  r->add_option("--report", stream.report, "write the JSON report here");
  add_ga_options(r, stream.ga);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorCategory::invalid_input);
  }

  try {
    if (*s) return run_synth(synth);
    if (*t) return run_train(train);
    if (*i) return run_impute(impute);
    if (*r) return run_stream(stream);
  } catch (const Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", category_name(e.category()), e.what());
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
