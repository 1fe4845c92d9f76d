#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "qae/circuits.hpp"
#include "qae/datasets.hpp"
#include "qae/training.hpp"

namespace qae {

struct DatasetSpec {
  std::string kind = "moons";  // moons | circle | donut | scurve | creditcard
  SplitSizes sizes;            // toy generators; zero means the reference size
  std::optional<double> noise;
  bool swap_classes = false;
  std::uint64_t seed = 0;
  // creditcard only
  std::filesystem::path path;
  CreditCardOptions creditcard;

  bool is_creditcard() const { return kind == "creditcard"; }
  int n_features() const { return is_creditcard() ? static_cast<int>(kCreditCardFeatures) : 2; }
};

struct GridRequest {
  int resolution = 200;
  std::optional<Box2> bounds;
};

struct RunConfig {
  DatasetSpec dataset;
  EncoderConfig encoder;
  int trash_qubits = 1;
  TrainConfig training;
  GridRequest grid;
  std::filesystem::path output_dir = "run";

  // n_features agrees with the dataset, trash count below the qubit count, and so on.
  void validate() const;
};

// Command-line overrides layered over a config file.
struct ConfigOverrides {
  std::optional<int> layers;
  std::optional<std::string> embedding;
  bool reupload = false;
  std::optional<std::string> composition;
  std::optional<int> trash_qubits;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> output_dir;
};

// Rejects unknown keys and mistyped values with ConfigError.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);
void apply_overrides(RunConfig& cfg, const ConfigOverrides& overrides);

nlohmann::json encoder_to_json(const EncoderConfig& cfg);
EncoderConfig encoder_from_json(const nlohmann::json& j);
nlohmann::json run_config_to_json(const RunConfig& cfg);

}  // namespace qae
