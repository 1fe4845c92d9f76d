#include "qae/artifact.hpp"

#include <fmt/format.h>

#include "json.hpp"
#include "qae/config.hpp"
#include "qae/errors.hpp"
#include "qae/io.hpp"

namespace qae {

using nlohmann::json;

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string ModelArtifact::to_text() const {
  json j;
  j["format"] = "qae-model";
  j["version"] = kArtifactVersion;
  j["encoder"] = encoder_to_json(model.encoder);
  j["parameters"] = {{"shape", {model.theta.layers(), model.theta.n_qubits(), model.theta.per_qubit()}},
                     {"values", std::vector<double>(model.theta.values().begin(), model.theta.values().end())}};
  j["trash_qubits"] = model.trash_qubits;
  if (scaler) {
    j["scaler"] = {{"min", scaler->min}, {"max", scaler->max}};
  } else {
    j["scaler"] = nullptr;
  }
  j["training_seed"] = training_seed;
  j["train_report_digest"] = train_report_digest;
  return j.dump(2) + "\n";
}

ModelArtifact ModelArtifact::from_text(const std::string& text) {
  ModelArtifact a;
  try {
    const json j = json::parse(text);
    if (j.at("format") != "qae-model") throw DataError("not a qae model artifact");
    const int version = j.at("version").get<int>();
    if (version != kArtifactVersion) {
      throw DataError(fmt::format("artifact version {} unsupported (expected {})", version, kArtifactVersion));
    }
    a.model.encoder = encoder_from_json(j.at("encoder"));
    const auto& params = j.at("parameters");
    const auto shape = params.at("shape").get<std::vector<int>>();
    if (shape.size() != 3) throw DataError("parameter shape must have three entries");
    a.model.theta = ParameterSet(shape[0], shape[1], shape[2], params.at("values").get<std::vector<double>>());
    a.model.trash_qubits = j.at("trash_qubits").get<std::vector<int>>();
    if (!j.at("scaler").is_null()) {
      a.scaler = ScalerParams{j.at("scaler").at("min").get<std::vector<double>>(),
                              j.at("scaler").at("max").get<std::vector<double>>()};
    }
    a.training_seed = j.at("training_seed").get<std::uint64_t>();
    a.train_report_digest = j.at("train_report_digest").get<std::string>();
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model artifact: ") + e.what());
  }
  a.model.validate();
  return a;
}

void ModelArtifact::save(const std::filesystem::path& path) const { write_file_atomic(path, to_text()); }

ModelArtifact ModelArtifact::load(const std::filesystem::path& path) { return from_text(read_file(path)); }

}  // namespace qae
