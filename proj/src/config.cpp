#include "qae/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <string_view>

#include "qae/errors.hpp"
#include "qae/io.hpp"

namespace qae {

using nlohmann::json;

namespace {

void expect_object(const json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, std::string_view where) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  bool ok = false;
  if constexpr (std::is_same_v<T, bool>) {
    ok = v.is_boolean();
  } else if constexpr (std::is_integral_v<T>) {
    ok = v.is_number_integer() && (std::is_signed_v<T> || v.get<long long>() >= 0);
  } else if constexpr (std::is_floating_point_v<T>) {
    ok = v.is_number();
  } else {
    ok = v.is_string();
  }
  if (!ok) throw ConfigError(std::string(where) + "." + key + " has the wrong type");
  out = v.get<T>();
}

DatasetSpec parse_dataset(const json& j) {
  expect_object(j, "dataset",
                {"kind", "train", "validation", "test", "noise", "swap_classes", "seed", "path",
                 "train_subsample", "test_normal"});
  DatasetSpec d;
  read(j, "kind", d.kind, "dataset");
  read(j, "seed", d.seed, "dataset");
  if (d.is_creditcard()) {
    std::string path;
    read(j, "path", path, "dataset");
    if (path.empty()) throw ConfigError("dataset.path is required for creditcard");
    d.path = path;
    d.creditcard.seed = d.seed;
    read(j, "train_subsample", d.creditcard.train_subsample, "dataset");
    read(j, "validation", d.creditcard.validation, "dataset");
    read(j, "test_normal", d.creditcard.test_normal, "dataset");
    for (const char* k : {"train", "test", "noise", "swap_classes"}) {
      if (j.contains(k)) throw ConfigError(std::string("dataset.") + k + " does not apply to creditcard");
    }
  } else {
    parse_toy_kind(d.kind);
    d.sizes = reference_split_sizes(parse_toy_kind(d.kind));
    read(j, "train", d.sizes.train, "dataset");
    read(j, "validation", d.sizes.validation, "dataset");
    read(j, "test", d.sizes.test, "dataset");
    if (j.contains("noise")) {
      double noise = 0;
      read(j, "noise", noise, "dataset");
      if (noise < 0) throw ConfigError("dataset.noise must be >= 0");
      d.noise = noise;
    }
    read(j, "swap_classes", d.swap_classes, "dataset");
    for (const char* k : {"path", "train_subsample", "test_normal"}) {
      if (j.contains(k)) throw ConfigError(std::string("dataset.") + k + " only applies to creditcard");
    }
  }
  return d;
}

std::vector<Pauli> parse_cycle(const std::string& text) { return RotationComposition::parse(text).axes; }

EntanglerRange parse_range(const std::string& text) {
  if (text == "cycling") return EntanglerRange::Cycling;
  if (text == "nearest") return EntanglerRange::Nearest;
  throw ConfigError("entangler_range must be cycling|nearest, got '" + text + "'");
}

TrainConfig parse_training(const json& j) {
  expect_object(j, "training",
                {"epochs", "batch_size", "lr0", "decay_rate", "decay_every", "init_low", "init_high", "seed",
                 "patience"});
  TrainConfig t;
  read(j, "epochs", t.epochs, "training");
  read(j, "batch_size", t.batch_size, "training");
  read(j, "lr0", t.lr0, "training");
  read(j, "decay_rate", t.decay_rate, "training");
  read(j, "decay_every", t.decay_every, "training");
  read(j, "init_low", t.init_low, "training");
  read(j, "init_high", t.init_high, "training");
  read(j, "seed", t.seed, "training");
  read(j, "patience", t.patience, "training");
  t.validate();
  return t;
}

GridRequest parse_grid(const json& j) {
  expect_object(j, "grid", {"resolution", "bounds"});
  GridRequest g;
  read(j, "resolution", g.resolution, "grid");
  if (j.contains("bounds")) {
    const json& b = j.at("bounds");
    if (!b.is_array() || b.size() != 4 || !std::all_of(b.begin(), b.end(), [](const json& v) { return v.is_number(); })) {
      throw ConfigError("grid.bounds must be [x0_min, x0_max, x1_min, x1_max]");
    }
    g.bounds = Box2{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()};
  }
  return g;
}

}  // namespace

json encoder_to_json(const EncoderConfig& cfg) {
  json j;
  j["n_features"] = cfg.n_features;
  j["embedding"] = cfg.embedding.name();
  if (cfg.embedding.variant == EmbeddingKind::Variant::Generalized) {
    j["dimension"] = cfg.embedding.dimension;
    j["pauli_cycle"] = RotationComposition{cfg.embedding.pauli_cycle}.to_string();
  }
  j["layers"] = cfg.layers;
  j["composition"] = cfg.composition.to_string();
  j["reupload"] = cfg.reupload;
  j["reupload_leading_embed"] = cfg.reupload_leading_embed;
  j["entangler_range"] = cfg.entangler_range == EntanglerRange::Nearest ? "nearest" : "cycling";
  j["embedding_angle_factor"] = cfg.embedding_angle_factor;
  return j;
}

EncoderConfig encoder_from_json(const json& j) {
  expect_object(j, "encoder",
                {"n_features", "embedding", "dimension", "pauli_cycle", "layers", "composition", "reupload",
                 "reupload_leading_embed", "entangler_range", "embedding_angle_factor"});
  EncoderConfig cfg;
  read(j, "n_features", cfg.n_features, "encoder");
  std::string embedding = "standard";
  read(j, "embedding", embedding, "encoder");
  if (embedding == "generalized") {
    int dimension = 1;
    std::string cycle = "Y";
    read(j, "dimension", dimension, "encoder");
    read(j, "pauli_cycle", cycle, "encoder");
    cfg.embedding = EmbeddingKind::generalized(dimension, parse_cycle(cycle));
  } else {
    if (j.contains("dimension") || j.contains("pauli_cycle")) {
      throw ConfigError("encoder.dimension/pauli_cycle require embedding 'generalized'");
    }
    cfg.embedding = EmbeddingKind::from_name(embedding);
  }
  read(j, "layers", cfg.layers, "encoder");
  std::string composition = "Y";
  read(j, "composition", composition, "encoder");
  cfg.composition = RotationComposition::parse(composition);
  read(j, "reupload", cfg.reupload, "encoder");
  read(j, "reupload_leading_embed", cfg.reupload_leading_embed, "encoder");
  std::string range = "cycling";
  read(j, "entangler_range", range, "encoder");
  cfg.entangler_range = parse_range(range);
  read(j, "embedding_angle_factor", cfg.embedding_angle_factor, "encoder");
  cfg.validate();
  return cfg;
}

void RunConfig::validate() const {
  encoder.validate();
  training.validate();
  if (encoder.n_features != dataset.n_features()) {
    throw ConfigError("encoder.n_features = " + std::to_string(encoder.n_features) + " but dataset '" +
                      dataset.kind + "' has " + std::to_string(dataset.n_features()) + " features");
  }
  if (trash_qubits < 1 || trash_qubits >= encoder.n_qubits()) {
    throw ConfigError("trash_qubits = " + std::to_string(trash_qubits) + " must be in [1, " +
                      std::to_string(encoder.n_qubits() - 1) + "]");
  }
  if (grid.resolution < 2) throw ConfigError("grid.resolution must be >= 2");
}

RunConfig parse_run_config(const json& doc) {
  expect_object(doc, "config", {"dataset", "encoder", "trash_qubits", "training", "grid", "output_dir"});
  RunConfig cfg;
  if (doc.contains("dataset")) cfg.dataset = parse_dataset(doc.at("dataset"));
  cfg.encoder.n_features = cfg.dataset.n_features();
  if (doc.contains("encoder")) {
    json enc = doc.at("encoder");
    if (enc.is_object() && !enc.contains("n_features")) enc["n_features"] = cfg.dataset.n_features();
    cfg.encoder = encoder_from_json(enc);
  }
  read(doc, "trash_qubits", cfg.trash_qubits, "config");
  if (doc.contains("training")) cfg.training = parse_training(doc.at("training"));
  if (doc.contains("grid")) cfg.grid = parse_grid(doc.at("grid"));
  std::string out = cfg.output_dir.string();
  read(doc, "output_dir", out, "config");
  cfg.output_dir = out;
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  RunConfig cfg = parse_run_config(doc);
  // Relative dataset paths resolve against the config file's directory.
  if (cfg.dataset.is_creditcard() && cfg.dataset.path.is_relative() && !std::filesystem::exists(cfg.dataset.path)) {
    cfg.dataset.path = path.parent_path() / cfg.dataset.path;
  }
  return cfg;
}

void apply_overrides(RunConfig& cfg, const ConfigOverrides& o) {
  if (o.layers) cfg.encoder.layers = *o.layers;
  if (o.embedding) cfg.encoder.embedding = EmbeddingKind::from_name(*o.embedding);
  if (o.reupload) cfg.encoder.reupload = true;
  if (o.composition) cfg.encoder.composition = RotationComposition::parse(*o.composition);
  if (o.trash_qubits) cfg.trash_qubits = *o.trash_qubits;
  if (o.seed) cfg.training.seed = *o.seed;
  if (o.output_dir) cfg.output_dir = *o.output_dir;
  cfg.validate();
}

json run_config_to_json(const RunConfig& cfg) {
  json j;
  json d;
  d["kind"] = cfg.dataset.kind;
  d["seed"] = cfg.dataset.seed;
  if (cfg.dataset.is_creditcard()) {
    d["path"] = cfg.dataset.path.string();
    d["train_subsample"] = cfg.dataset.creditcard.train_subsample;
    d["validation"] = cfg.dataset.creditcard.validation;
    d["test_normal"] = cfg.dataset.creditcard.test_normal;
  } else {
    d["train"] = cfg.dataset.sizes.train;
    d["validation"] = cfg.dataset.sizes.validation;
    d["test"] = cfg.dataset.sizes.test;
    if (cfg.dataset.noise) d["noise"] = *cfg.dataset.noise;
    d["swap_classes"] = cfg.dataset.swap_classes;
  }
  j["dataset"] = d;
  j["encoder"] = encoder_to_json(cfg.encoder);
  j["trash_qubits"] = cfg.trash_qubits;
  const TrainConfig& t = cfg.training;
  j["training"] = {{"epochs", t.epochs},       {"batch_size", t.batch_size}, {"lr0", t.lr0},
                   {"decay_rate", t.decay_rate}, {"decay_every", t.decay_every}, {"init_low", t.init_low},
                   {"init_high", t.init_high},   {"seed", t.seed},             {"patience", t.patience}};
  json g;
  g["resolution"] = cfg.grid.resolution;
  if (cfg.grid.bounds) {
    const Box2& b = *cfg.grid.bounds;
    g["bounds"] = {b.x0_min, b.x0_max, b.x1_min, b.x1_max};
  }
  j["grid"] = g;
  j["output_dir"] = cfg.output_dir.string();
  return j;
}

}  // namespace qae
