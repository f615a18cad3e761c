#include "missingnet/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "missingnet/error.hpp"

namespace missingnet {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

template <typename F>
auto parsing(const char* what, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    fail(ErrorCategory::invalid_input, std::string("malformed ") + what + " document: " + e.what());
  }
}

json artmap_config_to_json(const FuzzyArtmapConfig& c) {
  return {{"vigilance", c.vigilance},
          {"learning_rate", c.learning_rate},
          {"choice", c.choice},
          {"max_epochs", c.max_epochs},
          {"match_tracking_epsilon", c.match_tracking_epsilon}};
}

FuzzyArtmapConfig artmap_config_from_json(const json& j) {
  FuzzyArtmapConfig c;
  c.vigilance = j.at("vigilance").get<double>();
  c.learning_rate = j.at("learning_rate").get<double>();
  c.choice = j.at("choice").get<double>();
  c.max_epochs = j.at("max_epochs").get<std::size_t>();
  c.match_tracking_epsilon = j.at("match_tracking_epsilon").get<double>();
  return c;
}

json train_config_to_json(const TrainConfig& c) {
  return {{"max_cycles", c.max_cycles},
          {"gradient_tolerance", c.gradient_tolerance},
          {"seed", c.seed},
          {"initial_lambda", c.initial_lambda},
          {"sigma", c.sigma}};
}

TrainConfig train_config_from_json(const json& j) {
  TrainConfig c;
  c.max_cycles = j.at("max_cycles").get<std::size_t>();
  c.gradient_tolerance = j.at("gradient_tolerance").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.initial_lambda = j.at("initial_lambda").get<double>();
  c.sigma = j.at("sigma").get<double>();
  return c;
}

}  // namespace

json artmap_to_json(const FuzzyArtmap& model) {
  json nodes = json::array();
  for (const CategoryNode& n : model.nodes()) nodes.push_back({{"label", n.label}, {"weight", n.weight}});
  return {{"kind", "fuzzy_artmap"},
          {"input_dim", model.input_dim()},
          {"config", artmap_config_to_json(model.config())},
          {"nodes", std::move(nodes)}};
}

FuzzyArtmap artmap_from_json(const json& doc) {
  return parsing("fuzzy ARTMAP", [&] {
    require(doc.at("kind") == "fuzzy_artmap", "document is not a fuzzy ARTMAP");
    std::vector<CategoryNode> nodes;
    for (const json& n : doc.at("nodes"))
      nodes.push_back({n.at("weight").get<std::vector<double>>(), n.at("label").get<Label>()});
    return FuzzyArtmap::from_nodes(doc.at("input_dim").get<std::size_t>(),
                                   artmap_config_from_json(doc.at("config")), std::move(nodes));
  });
}

json mlp_to_json(const Mlp& net) {
  return {{"kind", "mlp"},
          {"input_dim", net.input_dim()},
          {"hidden_dim", net.hidden_dim()},
          {"output_dim", net.output_dim()},
          {"hidden_activation", "tanh"},
          {"output_activation", "linear"},
          {"layout", "W1 (hidden x input, row-major), b1, W2 (output x hidden, row-major), b2"},
          {"parameters", std::vector<double>(net.parameters().begin(), net.parameters().end())}};
}

Mlp mlp_from_json(const json& doc) {
  return parsing("MLP", [&] {
    require(doc.at("kind") == "mlp", "document is not an MLP");
    Mlp net(doc.at("input_dim").get<std::size_t>(), doc.at("hidden_dim").get<std::size_t>(),
            doc.at("output_dim").get<std::size_t>());
    net.set_parameters(doc.at("parameters").get<std::vector<double>>());
    return net;
  });
}

json scaler_to_json(const FeatureScaler& scaler) {
  return {{"min", scaler.mins()}, {"max", scaler.maxs()}};
}

FeatureScaler scaler_from_json(const json& doc) {
  return parsing("scaler", [&] {
    return FeatureScaler(doc.at("min").get<std::vector<double>>(), doc.at("max").get<std::vector<double>>());
  });
}

json member_model_to_json(const MemberModel& model) {
  return std::visit(
      [](const auto& m) -> json {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, FuzzyArtmap>) return artmap_to_json(m);
        else return mlp_to_json(m);
      },
      model);
}

MemberModel member_model_from_json(const json& doc) {
  const std::string kind = parsing("model", [&] { return doc.at("kind").get<std::string>(); });
  if (kind == "fuzzy_artmap") return artmap_from_json(doc);
  if (kind == "mlp") return mlp_from_json(doc);
  fail(ErrorCategory::invalid_input, "unknown model kind '" + kind + "'");
}

json ensemble_manifest(const EnsembleModel& model) {
  const EnsembleConfig& c = model.config;
  json members = json::array();
  for (std::size_t m = 0; m < model.members.size(); ++m) {
    const EnsembleMember& mem = model.members[m];
    members.push_back({{"subset", std::vector<std::size_t>(mem.subset.indices().begin(), mem.subset.indices().end())},
                       {"weight", mem.weight},
                       {"validation_error", mem.validation_error},
                       {"model", "members/" + [&] {
                          char buf[32];
                          std::snprintf(buf, sizeof(buf), "%04zu.json", m);
                          return std::string(buf);
                        }()}});
  }
  json doc = {{"kind", "feature_subset_ensemble"},
              {"task", task_name(c.task)},
              {"n", model.feature_count()},
              {"n_avail", c.n_avail},
              {"config",
               {{"artmap", artmap_config_to_json(c.artmap)},
                {"hidden_dim", c.hidden_dim},
                {"train", train_config_to_json(c.train)},
                {"tolerance", c.tolerance},
                {"abs_floor", c.abs_floor},
                {"member_cap", c.member_cap}}},
              {"feature_names", model.feature_names},
              {"class_labels", model.class_labels},
              {"target_names", model.target_names},
              {"scaler", scaler_to_json(model.scaler)},
              {"committee_size", model.committee_size},
              {"committee_curve", model.committee_curve},
              {"members", std::move(members)}};
  if (c.task == Task::regression) doc["response_scaler"] = scaler_to_json(model.response_scaler);
  return doc;
}

void save_ensemble(const EnsembleModel& model, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(fs::path(dir) / "members", ec);
  if (ec) fail(ErrorCategory::io, "cannot create '" + dir + "': " + ec.message());
  const json manifest = ensemble_manifest(model);
  write_json_file((fs::path(dir) / "manifest.json").string(), manifest);
  for (std::size_t m = 0; m < model.members.size(); ++m)
    write_json_file((fs::path(dir) / manifest["members"][m]["model"].get<std::string>()).string(),
                    member_model_to_json(model.members[m].model));
}

EnsembleModel load_ensemble(const std::string& dir) {
  const json doc = read_json_file((fs::path(dir) / "manifest.json").string());
  return parsing("ensemble manifest", [&] {
    require(doc.at("kind") == "feature_subset_ensemble", "document is not an ensemble manifest");
    EnsembleModel model;
    EnsembleConfig& c = model.config;
    c.task = parse_task(doc.at("task").get<std::string>());
    c.n_avail = doc.at("n_avail").get<std::size_t>();
    const json& cfg = doc.at("config");
    c.artmap = artmap_config_from_json(cfg.at("artmap"));
    c.hidden_dim = cfg.at("hidden_dim").get<std::size_t>();
    c.train = train_config_from_json(cfg.at("train"));
    c.tolerance = cfg.at("tolerance").get<double>();
    c.abs_floor = cfg.at("abs_floor").get<double>();
    c.member_cap = cfg.at("member_cap").get<std::size_t>();
    model.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    model.class_labels = doc.at("class_labels").get<std::vector<std::string>>();
    model.target_names = doc.at("target_names").get<std::vector<std::string>>();
    model.scaler = scaler_from_json(doc.at("scaler"));
    if (c.task == Task::regression) model.response_scaler = scaler_from_json(doc.at("response_scaler"));
    model.committee_size = doc.at("committee_size").get<std::size_t>();
    model.committee_curve = doc.at("committee_curve").get<std::vector<double>>();
    const std::size_t n = doc.at("n").get<std::size_t>();
    require(n == model.feature_names.size(), "manifest feature count mismatch");
    for (const json& jm : doc.at("members")) {
      EnsembleMember mem;
      mem.subset = FeatureSubset(jm.at("subset").get<std::vector<std::size_t>>(), n);
      mem.weight = jm.at("weight").get<double>();
      mem.validation_error = jm.at("validation_error").get<double>();
      mem.model = member_model_from_json(
          read_json_file((fs::path(dir) / jm.at("model").get<std::string>()).string()));
      model.members.push_back(std::move(mem));
    }
    require(model.members.size() == count_networks(n, c.n_avail), "manifest member count mismatch");
    return model;
  });
}

json baseline_to_json(const BaselineModel& model) {
  json doc = {{"kind", "nn_ga_baseline"},
              {"task", task_name(model.task)},
              {"feature_names", model.feature_names},
              {"class_labels", model.class_labels},
              {"target_names", model.target_names},
              {"scaler", scaler_to_json(model.imputer.scaler)},
              {"autoencoder", mlp_to_json(model.imputer.autoencoder)},
              {"predictor", member_model_to_json(model.predictor)}};
  if (model.task == Task::regression) doc["response_scaler"] = scaler_to_json(model.response_scaler);
  return doc;
}

BaselineModel baseline_from_json(const json& doc) {
  return parsing("baseline", [&] {
    require(doc.at("kind") == "nn_ga_baseline", "document is not an NN-GA baseline");
    BaselineModel model;
    model.task = parse_task(doc.at("task").get<std::string>());
    model.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    model.class_labels = doc.at("class_labels").get<std::vector<std::string>>();
    model.target_names = doc.at("target_names").get<std::vector<std::string>>();
    model.imputer.scaler = scaler_from_json(doc.at("scaler"));
    model.imputer.autoencoder = mlp_from_json(doc.at("autoencoder"));
    model.predictor = member_model_from_json(doc.at("predictor"));
    if (model.task == Task::regression) model.response_scaler = scaler_from_json(doc.at("response_scaler"));
    return model;
  });
}

void save_baseline(const BaselineModel& model, const std::string& path) {
  write_json_file(path, baseline_to_json(model));
}

BaselineModel load_baseline(const std::string& path) { return baseline_from_json(read_json_file(path)); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCategory::io, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCategory::invalid_input, "'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const json& doc) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    fs::create_directories(parent, ec);
  }
  std::ofstream out(path);
  if (!out) fail(ErrorCategory::io, "cannot write '" + path + "'");
  out << doc.dump(1) << '\n';
}

}  // namespace missingnet
