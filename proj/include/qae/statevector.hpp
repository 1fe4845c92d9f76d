#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qae {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 24;

enum class Pauli { X, Y, Z };

enum class GateKind { RX, RY, RZ, H, CNOT, CSWAP };

// A gate acting on one to three qubits. Rotations follow R_P(theta) = exp(-i theta P / 2).
// `parameter` is the flat index of the trainable angle driving this gate, or -1 for
// fixed and data-dependent gates.
struct Gate {
  GateKind kind = GateKind::H;
  double angle = 0.0;
  std::array<int, 3> qubits{-1, -1, -1};
  int parameter = -1;

  static Gate rotation(Pauli axis, int qubit, double angle, int parameter = -1);
  static Gate rx(int qubit, double angle) { return rotation(Pauli::X, qubit, angle); }
  static Gate ry(int qubit, double angle) { return rotation(Pauli::Y, qubit, angle); }
  static Gate rz(int qubit, double angle) { return rotation(Pauli::Z, qubit, angle); }
  static Gate h(int qubit);
  static Gate cnot(int control, int target);
  static Gate cswap(int control, int a, int b);

  bool is_rotation() const noexcept {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
  }
  int arity() const noexcept;
  // The gate's inverse: negated angle for rotations, itself otherwise.
  Gate inverse() const;
};

// Pure state over n qubits. Qubit 0 is the most significant bit of the basis index,
// so qubit q corresponds to bit (n - 1 - q).
class StateVector {
 public:
  // |0...0> over n_qubits, 1 <= n_qubits <= kMaxQubits.
  explicit StateVector(int n_qubits);

  // Adopts the given amplitudes; the length must be a power of two. No normalization
  // is applied.
  static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  std::span<Amplitude> amplitudes() noexcept { return amps_; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;

  // Bit mask of qubit q inside a basis index.
  std::size_t mask(int qubit) const noexcept {
    return std::size_t{1} << static_cast<unsigned>(n_qubits_ - 1 - qubit);
  }

 private:
  StateVector() = default;
  int n_qubits_ = 0;
  std::vector<Amplitude> amps_;
};

StateVector init_zero(int n_qubits);

// In-place application. Throws CircuitError on invalid or colliding qubit indices.
void apply_gate(StateVector& state, const Gate& gate);

void apply_gates(StateVector& state, std::span<const Gate> gates);

// Probability that every qubit in `trash` measures 0.
double trash_zero_probability(const StateVector& state, std::span<const int> trash);

// Appends |trash| reference qubits in |0> and one ancilla, runs H, a CSWAP between each
// trash qubit and its reference, H, and returns P(ancilla = 0) = (1 + p) / 2.
double swap_test_probability(const StateVector& system, std::span<const int> trash);

}  // namespace qae
