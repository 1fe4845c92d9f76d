#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qae/statevector.hpp"

namespace qae {

// Angle embedding that spreads each feature over `dimension` adjacent qubits. The Pauli
// axis for qubit offset j is pauli_cycle[j % size]. Standard, parallel and alternate
// embeddings are the d = 1 / [Y], d = 2 / [Y, Y] and d = 2 / [Y, X] special cases.
struct EmbeddingKind {
  enum class Variant { Standard, Parallel, Alternate, Generalized };

  Variant variant = Variant::Standard;
  int dimension = 1;
  std::vector<Pauli> pauli_cycle{Pauli::Y};

  static EmbeddingKind standard() { return {Variant::Standard, 1, {Pauli::Y}}; }
  static EmbeddingKind parallel() { return {Variant::Parallel, 2, {Pauli::Y, Pauli::Y}}; }
  static EmbeddingKind alternate() { return {Variant::Alternate, 2, {Pauli::Y, Pauli::X}}; }
  static EmbeddingKind generalized(int dimension, std::vector<Pauli> cycle) {
    return {Variant::Generalized, dimension, std::move(cycle)};
  }

  Pauli axis(int offset) const { return pauli_cycle[offset % pauli_cycle.size()]; }
  std::string name() const;
  // Inverse of name() for the four named variants; `generalized` needs dimension/cycle.
  static EmbeddingKind from_name(const std::string& name);
};

// Rotation axes applied to every qubit in each entangling layer, in application order:
// "YXY" means RY, then RX, then RY acting on the state.
struct RotationComposition {
  std::vector<Pauli> axes{Pauli::Y};

  std::size_t size() const noexcept { return axes.size(); }
  std::string to_string() const;
  static RotationComposition parse(const std::string& text);
};

// CNOT ring range policy. Cycling uses r = (layer mod (n - 1)) + 1; Nearest forces r = 1.
enum class EntanglerRange { Cycling, Nearest };

struct EncoderConfig {
  int n_features = 2;
  EmbeddingKind embedding = EmbeddingKind::standard();
  int layers = 4;
  RotationComposition composition;
  bool reupload = false;
  // Prepend one embedding block before the first variational layer when reuploading.
  bool reupload_leading_embed = false;
  EntanglerRange entangler_range = EntanglerRange::Cycling;
  // Data rotations use R_P(factor * x). 2.0 reproduces a literal exp(-i x P).
  double embedding_angle_factor = 1.0;

  int n_qubits() const noexcept { return embedding.dimension * n_features; }
  // Variational blocks. Reuploading runs U(theta_0) then `layers` x [S(x) U(theta_l)].
  int blocks() const noexcept { return reupload ? layers + 1 : layers; }
  std::size_t parameter_count() const noexcept {
    return static_cast<std::size_t>(blocks()) * n_qubits() * composition.size();
  }
  void validate() const;
};

// Trainable angles, shape (blocks, n_qubits, rotations per qubit), flattened row-major.
class ParameterSet {
 public:
  ParameterSet() = default;
  ParameterSet(int layers, int n_qubits, int per_qubit);
  ParameterSet(int layers, int n_qubits, int per_qubit, std::vector<double> values);
  static ParameterSet zeros(const EncoderConfig& cfg);

  int layers() const noexcept { return layers_; }
  int n_qubits() const noexcept { return n_qubits_; }
  int per_qubit() const noexcept { return per_qubit_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::size_t index(int layer, int qubit, int rot) const noexcept {
    return (static_cast<std::size_t>(layer) * n_qubits_ + qubit) * per_qubit_ + rot;
  }
  double& at(int layer, int qubit, int rot) { return values_[index(layer, qubit, rot)]; }
  double at(int layer, int qubit, int rot) const { return values_[index(layer, qubit, rot)]; }

  std::span<const double> layer(int l) const {
    return {values_.data() + index(l, 0, 0), static_cast<std::size_t>(n_qubits_) * per_qubit_};
  }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  bool matches(const EncoderConfig& cfg) const noexcept;

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;

 private:
  int layers_ = 0;
  int n_qubits_ = 0;
  int per_qubit_ = 0;
  std::vector<double> values_;
};

// Angle embedding of x into `state`; feature i drives qubits d*i ... d*i + d - 1.
void embed(StateVector& state, std::span<const double> x, const EmbeddingKind& kind,
           double angle_factor = 1.0);

// One strongly entangling layer: per-qubit rotations in composition order, then the
// CNOT ring. theta_layer is (n_qubits x composition.size()) row-major.
void entangling_layer(StateVector& state, std::span<const double> theta_layer,
                      const RotationComposition& composition, int layer_index,
                      EntanglerRange range = EntanglerRange::Cycling);

// The full encoder as a gate list. Trainable gates carry their flat parameter index.
std::vector<Gate> encoder_gates(std::span<const double> x, const ParameterSet& theta,
                                const EncoderConfig& cfg);

// Runs the encoder on |0...0>.
StateVector encode(std::span<const double> x, const ParameterSet& theta, const EncoderConfig& cfg);

int qubit_count(const EncoderConfig& cfg);

}  // namespace qae
