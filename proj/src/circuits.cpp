#include "qae/circuits.hpp"

#include <cmath>

#include "qae/errors.hpp"

namespace qae {

namespace {

char pauli_char(Pauli p) { return p == Pauli::X ? 'X' : p == Pauli::Y ? 'Y' : 'Z'; }

void append_embedding(std::vector<Gate>& gates, std::span<const double> x, const EmbeddingKind& kind,
                      double factor) {
  const int d = kind.dimension;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int j = 0; j < d; ++j) {
      gates.push_back(Gate::rotation(kind.axis(j), d * static_cast<int>(i) + j, factor * x[i]));
    }
  }
}

void append_layer(std::vector<Gate>& gates, std::span<const double> theta_layer,
                  const RotationComposition& composition, int n_qubits, int layer_index,
                  EntanglerRange range, std::size_t parameter_offset) {
  const std::size_t per = composition.size();
  for (int q = 0; q < n_qubits; ++q) {
    for (std::size_t r = 0; r < per; ++r) {
      const std::size_t k = static_cast<std::size_t>(q) * per + r;
      gates.push_back(Gate::rotation(composition.axes[r], q, theta_layer[k],
                                     static_cast<int>(parameter_offset + k)));
    }
  }
  if (n_qubits < 2) return;
  const int r = range == EntanglerRange::Nearest ? 1 : layer_index % (n_qubits - 1) + 1;
  for (int q = 0; q < n_qubits; ++q) gates.push_back(Gate::cnot(q, (q + r) % n_qubits));
}

}  // namespace

std::string EmbeddingKind::name() const {
  switch (variant) {
    case Variant::Standard:
      return "standard";
    case Variant::Parallel:
      return "parallel";
    case Variant::Alternate:
      return "alternate";
    case Variant::Generalized:
      return "generalized";
  }
  return "standard";
}

EmbeddingKind EmbeddingKind::from_name(const std::string& name) {
  if (name == "standard") return standard();
  if (name == "parallel") return parallel();
  if (name == "alternate") return alternate();
  throw ConfigError("unknown embedding '" + name + "' (expected standard|parallel|alternate)");
}

std::string RotationComposition::to_string() const {
  std::string s;
  for (Pauli p : axes) s += pauli_char(p);
  return s;
}

RotationComposition RotationComposition::parse(const std::string& text) {
  RotationComposition c;
  c.axes.clear();
  for (char ch : text) {
    switch (ch) {
      case 'X':
      case 'x':
        c.axes.push_back(Pauli::X);
        break;
      case 'Y':
      case 'y':
        c.axes.push_back(Pauli::Y);
        break;
      case 'Z':
      case 'z':
        c.axes.push_back(Pauli::Z);
        break;
      default:
        throw ConfigError("invalid rotation axis '" + std::string(1, ch) + "' in '" + text + "'");
    }
  }
  if (c.axes.empty()) throw ConfigError("rotation composition is empty");
  return c;
}

void EncoderConfig::validate() const {
  if (n_features < 1) throw ConfigError("n_features must be >= 1");
  if (embedding.dimension < 1) throw ConfigError("embedding dimension must be >= 1");
  if (embedding.pauli_cycle.empty()) throw ConfigError("embedding Pauli cycle is empty");
  if (layers < 0) throw ConfigError("layer count must be >= 0");
  if (composition.axes.empty()) throw ConfigError("rotation composition is empty");
  if (n_qubits() > kMaxQubits) {
    throw ConfigError("encoder needs " + std::to_string(n_qubits()) + " qubits, budget is " +
                      std::to_string(kMaxQubits));
  }
  if (!std::isfinite(embedding_angle_factor) || embedding_angle_factor <= 0) {
    throw ConfigError("embedding_angle_factor must be finite and positive");
  }
}

ParameterSet::ParameterSet(int layers, int n_qubits, int per_qubit)
    : ParameterSet(layers, n_qubits, per_qubit,
                   std::vector<double>(static_cast<std::size_t>(layers) * n_qubits * per_qubit, 0.0)) {}

ParameterSet::ParameterSet(int layers, int n_qubits, int per_qubit, std::vector<double> values)
    : layers_(layers), n_qubits_(n_qubits), per_qubit_(per_qubit), values_(std::move(values)) {
  if (layers < 0 || n_qubits < 0 || per_qubit < 0) throw ConfigError("negative parameter shape");
  if (values_.size() != static_cast<std::size_t>(layers) * n_qubits * per_qubit) {
    throw ConfigError("parameter count " + std::to_string(values_.size()) + " does not match shape (" +
                      std::to_string(layers) + ", " + std::to_string(n_qubits) + ", " +
                      std::to_string(per_qubit) + ")");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ConfigError("non-finite parameter value");
  }
}

ParameterSet ParameterSet::zeros(const EncoderConfig& cfg) {
  return ParameterSet(cfg.blocks(), cfg.n_qubits(), static_cast<int>(cfg.composition.size()));
}

bool ParameterSet::matches(const EncoderConfig& cfg) const noexcept {
  return layers_ == cfg.blocks() && n_qubits_ == cfg.n_qubits() &&
         per_qubit_ == static_cast<int>(cfg.composition.size());
}

void embed(StateVector& state, std::span<const double> x, const EmbeddingKind& kind,
           double angle_factor) {
  if (state.n_qubits() != kind.dimension * static_cast<int>(x.size())) {
    throw ConfigError("embedding of " + std::to_string(x.size()) + " features with d=" +
                      std::to_string(kind.dimension) + " does not fit a " +
                      std::to_string(state.n_qubits()) + "-qubit state");
  }
  std::vector<Gate> gates;
  append_embedding(gates, x, kind, angle_factor);
  apply_gates(state, gates);
}

void entangling_layer(StateVector& state, std::span<const double> theta_layer,
                      const RotationComposition& composition, int layer_index, EntanglerRange range) {
  const int n = state.n_qubits();
  if (theta_layer.size() != static_cast<std::size_t>(n) * composition.size()) {
    throw ConfigError("layer angles have " + std::to_string(theta_layer.size()) + " entries, expected " +
                      std::to_string(static_cast<std::size_t>(n) * composition.size()));
  }
  std::vector<Gate> gates;
  append_layer(gates, theta_layer, composition, n, layer_index, range, 0);
  apply_gates(state, gates);
}

std::vector<Gate> encoder_gates(std::span<const double> x, const ParameterSet& theta,
                                const EncoderConfig& cfg) {
  if (x.size() != static_cast<std::size_t>(cfg.n_features)) {
    throw ConfigError("feature vector has " + std::to_string(x.size()) + " entries, encoder expects " +
                      std::to_string(cfg.n_features));
  }
  if (!theta.matches(cfg)) throw ConfigError("parameter shape does not match encoder config");

  const int n = cfg.n_qubits();
  const std::size_t per_layer = static_cast<std::size_t>(n) * cfg.composition.size();
  std::vector<Gate> gates;
  gates.reserve(cfg.blocks() * (per_layer + n + cfg.n_features * cfg.embedding.dimension) +
                cfg.n_features * cfg.embedding.dimension);

  if (!cfg.reupload) {
    append_embedding(gates, x, cfg.embedding, cfg.embedding_angle_factor);
    for (int l = 0; l < cfg.layers; ++l) {
      append_layer(gates, theta.layer(l), cfg.composition, n, l, cfg.entangler_range, l * per_layer);
    }
  } else {
    if (cfg.reupload_leading_embed) append_embedding(gates, x, cfg.embedding, cfg.embedding_angle_factor);
    for (int l = 0; l < cfg.blocks(); ++l) {
      if (l > 0) append_embedding(gates, x, cfg.embedding, cfg.embedding_angle_factor);
      append_layer(gates, theta.layer(l), cfg.composition, n, l, cfg.entangler_range, l * per_layer);
    }
  }
  return gates;
}

StateVector encode(std::span<const double> x, const ParameterSet& theta, const EncoderConfig& cfg) {
  StateVector state(cfg.n_qubits());
  apply_gates(state, encoder_gates(x, theta, cfg));
  return state;
}

int qubit_count(const EncoderConfig& cfg) { return cfg.n_qubits(); }

}  // namespace qae
