#include <array>
#include <cmath>
#include <random>

#include "missingnet/error.hpp"
#include "missingnet/harness.hpp"

namespace missingnet {
namespace {

// Each latent factor drives two features (offset, gain) so any one of a pair
// can stand in for the other.
struct PairGain {
  double offset_a, gain_a, offset_b, gain_b;
};

constexpr std::array<PairGain, 5> kGasPairs{{
    {10.0, 300.0, 5.0, 120.0},
    {2.0, 80.0, 1.0, 45.0},
    {20.0, 600.0, 150.0, 2400.0},
    {0.5, 12.0, 3.0, 60.0},
    {1000.0, 9000.0, 200.0, 3500.0},
}};

constexpr double kGasNoise = 0.05;       // fraction of each feature's gain
constexpr double kHealthyHigh = 0.65;    // healthy latents in [0, 0.65]
constexpr double kFaultyLow = 0.35;      // faulty latents in [0.35, 1]

Dataset make_classification(std::size_t rows, std::uint64_t seed, SynthInfo* info) {
  Dataset ds;
  ds.task = Task::classification;
  ds.feature_names = {"h2", "ch4", "c2h6", "c2h4", "co", "co2", "c2h2", "o2", "n2", "tdcg"};
  ds.class_labels = {"healthy", "faulty"};
  Rng rng(seed);
  std::bernoulli_distribution faulty(0.5);
  std::normal_distribution<double> noise(0.0, kGasNoise);
  std::uniform_real_distribution<double> healthy_z(0.0, kHealthyHigh), faulty_z(kFaultyLow, 1.0);

  for (std::size_t r = 0; r < rows; ++r) {
    const bool is_faulty = faulty(rng);
    Instance inst;
    inst.features.resize(10);
    inst.mask.assign(10, true);
    inst.label = is_faulty ? 1 : 0;
    for (std::size_t k = 0; k < kGasPairs.size(); ++k) {
      const double z = is_faulty ? faulty_z(rng) : healthy_z(rng);
      const PairGain& g = kGasPairs[k];
      inst.features[2 * k] = g.offset_a + g.gain_a * (z + noise(rng));
      inst.features[2 * k + 1] = g.offset_b + g.gain_b * (z + noise(rng));
    }
    ds.instances.push_back(std::move(inst));
  }
  if (info) {
    info->description = "two classes over five latent factors, each observed through a redundant feature pair";
    nlohmann::json pairs = nlohmann::json::array();
    for (const PairGain& g : kGasPairs)
      pairs.push_back({{"offset_a", g.offset_a}, {"gain_a", g.gain_a},
                       {"offset_b", g.offset_b}, {"gain_b", g.gain_b}});
    info->parameters = {{"kind", "classification"}, {"rows", rows}, {"seed", seed},
                        {"pairs", pairs}, {"noise_fraction", kGasNoise},
                        {"healthy_box", {0.0, kHealthyHigh}}, {"faulty_box", {kFaultyLow, 1.0}}};
  }
  return ds;
}

// Normalised input u = load_mix * load + dist_mix * disturbance + bias, plus an
// independent per-input variation; the sensor reads offset + gain * u.
struct PlantInput {
  double load_mix, dist_mix, bias, offset, gain;
};

constexpr std::array<PlantInput, 4> kPlantInputs{{
    {0.8, 0.2, 0.0, 10.0, 8.0},   // fuel
    {0.9, -0.3, 0.3, 20.0, 10.0}, // air
    {0.3, 0.6, 0.0, 5.0, 4.0},    // reference level
    {0.1, 0.9, 0.0, 1.0, 3.0},    // disturbance
}};

constexpr double kPlantVariation = 0.1;  // sd of each input's own variation (normalised units)

Dataset make_regression(std::size_t rows, std::uint64_t seed, SynthInfo* info) {
  Dataset ds;
  ds.task = Task::regression;
  ds.feature_names = {"fuel", "air", "reference_level", "disturbance"};
  ds.target_names = {"drum_pressure", "steam_flow"};
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> variation(0.0, kPlantVariation);

  for (std::size_t r = 0; r < rows; ++r) {
    const double load = unit(rng);
    const double dist = unit(rng);
    std::array<double, 4> u{};
    for (std::size_t i = 0; i < u.size(); ++i) {
      const PlantInput& in = kPlantInputs[i];
      u[i] = in.load_mix * load + in.dist_mix * dist + in.bias + variation(rng);
    }
    Instance inst;
    inst.mask.assign(u.size(), true);
    for (std::size_t i = 0; i < u.size(); ++i)
      inst.features.push_back(kPlantInputs[i].offset + kPlantInputs[i].gain * u[i]);
    // Outputs respond to the actual inputs, not to the latent drivers.
    const double pressure = 1.0 + 6.0 * u[0] * u[0] + 3.0 * u[0] * u[1] + 1.5 * u[2];
    const double flow = 0.5 + 6.0 * u[0] * (0.5 + u[1]) + 2.0 * (1.0 + std::tanh(3.0 * (u[3] - 0.5)));
    inst.response = {pressure, flow};
    ds.instances.push_back(std::move(inst));
  }
  if (info) {
    info->description =
        "four co-driven inputs (load and disturbance factors plus independent variation); "
        "two nonlinear outputs of the inputs";
    nlohmann::json inputs = nlohmann::json::array();
    for (const PlantInput& in : kPlantInputs)
      inputs.push_back({{"load_mix", in.load_mix}, {"disturbance_mix", in.dist_mix}, {"bias", in.bias},
                        {"offset", in.offset}, {"gain", in.gain}});
    info->parameters = {{"kind", "regression"}, {"rows", rows}, {"seed", seed},
                        {"inputs", inputs}, {"variation_sd", kPlantVariation},
                        {"drum_pressure", "1 + 6 u0^2 + 3 u0 u1 + 1.5 u2"},
                        {"steam_flow", "0.5 + 6 u0 (0.5 + u1) + 2 (1 + tanh(3 (u3 - 0.5)))"}};
  }
  return ds;
}

}  // namespace

Dataset synth_generate(Task kind, std::size_t rows, std::uint64_t seed, SynthInfo* info) {
  require(rows >= 1, "synthetic data needs at least one row");
  return kind == Task::classification ? make_classification(rows, seed, info)
                                      : make_regression(rows, seed, info);
}

}  // namespace missingnet
