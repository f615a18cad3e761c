#pragma once

#include <string>

#include "json.hpp"
#include "missingnet/ensemble.hpp"
#include "missingnet/fuzzy_artmap.hpp"
#include "missingnet/harness.hpp"
#include "missingnet/imputer.hpp"
#include "missingnet/mlp.hpp"

namespace missingnet {

// Model documents are JSON with every double written in shortest round-trip
// form, so load(save(x)) reproduces x bit for bit.

nlohmann::json artmap_to_json(const FuzzyArtmap& model);
FuzzyArtmap artmap_from_json(const nlohmann::json& doc);

nlohmann::json mlp_to_json(const Mlp& net);
Mlp mlp_from_json(const nlohmann::json& doc);

nlohmann::json scaler_to_json(const FeatureScaler& scaler);
FeatureScaler scaler_from_json(const nlohmann::json& doc);

nlohmann::json member_model_to_json(const MemberModel& model);
MemberModel member_model_from_json(const nlohmann::json& doc);

/// Everything except the member models.
nlohmann::json ensemble_manifest(const EnsembleModel& model);

/// Writes `dir/manifest.json` and one `dir/members/NNNN.json` per member.
void save_ensemble(const EnsembleModel& model, const std::string& dir);
EnsembleModel load_ensemble(const std::string& dir);

nlohmann::json baseline_to_json(const BaselineModel& model);
BaselineModel baseline_from_json(const nlohmann::json& doc);
void save_baseline(const BaselineModel& model, const std::string& path);
BaselineModel load_baseline(const std::string& path);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& doc);

}  // namespace missingnet
