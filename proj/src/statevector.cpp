#include "qae/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qae/errors.hpp"

namespace qae {

namespace {

// Below this dimension the OpenMP fork/join overhead dominates the gate sweep.
constexpr std::size_t kParallelDimension = std::size_t{1} << 14;

using Matrix2 = std::array<Amplitude, 4>;

Matrix2 rotation_matrix(GateKind kind, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  switch (kind) {
    case GateKind::RX:
      return {Amplitude{c, 0}, Amplitude{0, -s}, Amplitude{0, -s}, Amplitude{c, 0}};
    case GateKind::RY:
      return {Amplitude{c, 0}, Amplitude{-s, 0}, Amplitude{s, 0}, Amplitude{c, 0}};
    case GateKind::RZ:
      return {Amplitude{c, -s}, Amplitude{0, 0}, Amplitude{0, 0}, Amplitude{c, s}};
    default: {
      const double r = 1 / std::sqrt(2.0);
      return {Amplitude{r, 0}, Amplitude{r, 0}, Amplitude{r, 0}, Amplitude{-r, 0}};
    }
  }
}

// a * b without the NaN/Inf recovery of the library operator (which is an out-of-line call).
inline Amplitude mul(const Amplitude& a, const Amplitude& b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Runs body(k) for k in [0, count), across OpenMP threads only for large states. A plain
// loop below the threshold avoids entering the OpenMP runtime at all.
template <typename Body>
inline void sweep(std::size_t count, std::size_t dimension, Body&& body) {
  if (dimension >= kParallelDimension) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) body(static_cast<std::size_t>(k));
  } else {
    for (std::size_t k = 0; k < count; ++k) body(k);
  }
}

// Index of the k-th basis state with `bit` clear.
inline std::size_t insert_zero(std::size_t k, std::size_t bit) {
  return ((k & ~(bit - 1)) << 1) | (k & (bit - 1));
}

void apply_single(StateVector& state, int qubit, const Matrix2& m) {
  Amplitude* amps = state.amplitudes().data();
  const std::size_t dim = state.dimension();
  const std::size_t bit = state.mask(qubit);
  sweep(dim / 2, dim, [&](std::size_t k) {
    const std::size_t i0 = insert_zero(k, bit);
    const std::size_t i1 = i0 | bit;
    const Amplitude a0 = amps[i0];
    const Amplitude a1 = amps[i1];
    amps[i0] = mul(m[0], a0) + mul(m[1], a1);
    amps[i1] = mul(m[2], a0) + mul(m[3], a1);
  });
}

void apply_cnot(StateVector& state, int control, int target) {
  Amplitude* amps = state.amplitudes().data();
  const std::size_t dim = state.dimension();
  const std::size_t cbit = state.mask(control);
  const std::size_t tbit = state.mask(target);
  // Pairs (i, i | tbit) with the control set and the target clear.
  const std::size_t lo = std::min(cbit, tbit);
  const std::size_t hi = std::max(cbit, tbit);
  sweep(dim / 4, dim, [&](std::size_t k) {
    const std::size_t i = insert_zero(insert_zero(k, lo), hi) | cbit;
    std::swap(amps[i], amps[i | tbit]);
  });
}

void apply_cswap(StateVector& state, int control, int a, int b) {
  Amplitude* amps = state.amplitudes().data();
  const std::size_t dim = state.dimension();
  const std::size_t cbit = state.mask(control);
  const std::size_t abit = state.mask(a);
  const std::size_t bbit = state.mask(b);
  sweep(dim, dim, [&](std::size_t i) {
    if ((i & cbit) && (i & abit) && !(i & bbit)) std::swap(amps[i], amps[(i & ~abit) | bbit]);
  });
}

void check_qubits(const StateVector& state, const Gate& gate) {
  const int arity = gate.arity();
  for (int j = 0; j < arity; ++j) {
    const int q = gate.qubits[j];
    if (q < 0 || q >= state.n_qubits()) {
      throw CircuitError("qubit index " + std::to_string(q) + " out of range for " +
                         std::to_string(state.n_qubits()) + "-qubit state");
    }
    for (int k = 0; k < j; ++k) {
      if (gate.qubits[k] == q) throw CircuitError("gate acts twice on qubit " + std::to_string(q));
    }
  }
}

}  // namespace

Gate Gate::rotation(Pauli axis, int qubit, double angle, int parameter) {
  Gate g;
  g.kind = axis == Pauli::X ? GateKind::RX : axis == Pauli::Y ? GateKind::RY : GateKind::RZ;
  g.angle = angle;
  g.qubits = {qubit, -1, -1};
  g.parameter = parameter;
  return g;
}

Gate Gate::h(int qubit) {
  Gate g;
  g.kind = GateKind::H;
  g.qubits = {qubit, -1, -1};
  return g;
}

Gate Gate::cnot(int control, int target) {
  Gate g;
  g.kind = GateKind::CNOT;
  g.qubits = {control, target, -1};
  return g;
}

Gate Gate::cswap(int control, int a, int b) {
  Gate g;
  g.kind = GateKind::CSWAP;
  g.qubits = {control, a, b};
  return g;
}

int Gate::arity() const noexcept {
  switch (kind) {
    case GateKind::CNOT:
      return 2;
    case GateKind::CSWAP:
      return 3;
    default:
      return 1;
  }
}

Gate Gate::inverse() const {
  Gate g = *this;
  if (is_rotation()) g.angle = -angle;
  return g;
}

StateVector::StateVector(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw ConfigError("qubit count " + std::to_string(n_qubits) + " outside [1, " +
                      std::to_string(kMaxQubits) + "]");
  }
  n_qubits_ = n_qubits;
  amps_.assign(std::size_t{1} << n_qubits, Amplitude{0, 0});
  amps_[0] = 1;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
  const std::size_t n = amplitudes.size();
  if (n < 2 || !std::has_single_bit(n) || std::countr_zero(n) > kMaxQubits) {
    throw ConfigError("amplitude count " + std::to_string(n) + " is not 2^n with 1 <= n <= 24");
  }
  StateVector s;
  s.n_qubits_ = std::countr_zero(n);
  s.amps_ = std::move(amplitudes);
  return s;
}

double StateVector::norm() const {
  double sum = 0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

StateVector init_zero(int n_qubits) { return StateVector(n_qubits); }

void apply_gate(StateVector& state, const Gate& gate) {
  check_qubits(state, gate);
  switch (gate.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::H:
      apply_single(state, gate.qubits[0], rotation_matrix(gate.kind, gate.angle));
      break;
    case GateKind::CNOT:
      apply_cnot(state, gate.qubits[0], gate.qubits[1]);
      break;
    case GateKind::CSWAP:
      apply_cswap(state, gate.qubits[0], gate.qubits[1], gate.qubits[2]);
      break;
  }
}

void apply_gates(StateVector& state, std::span<const Gate> gates) {
  for (const auto& g : gates) apply_gate(state, g);
}

double trash_zero_probability(const StateVector& state, std::span<const int> trash) {
  if (trash.empty()) throw ConfigError("trash qubit set is empty");
  std::size_t trash_mask = 0;
  for (int q : trash) {
    if (q < 0 || q >= state.n_qubits()) {
      throw ConfigError("trash qubit " + std::to_string(q) + " out of range");
    }
    trash_mask |= state.mask(q);
  }
  const auto amps = state.amplitudes();
  double p = 0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & trash_mask) == 0) p += std::norm(amps[i]);
  }
  return std::clamp(p, 0.0, 1.0);
}

double swap_test_probability(const StateVector& system, std::span<const int> trash) {
  if (trash.empty()) throw ConfigError("trash qubit set is empty");
  const int n = system.n_qubits();
  const int k = static_cast<int>(trash.size());
  for (int q : trash) {
    if (q < 0 || q >= n) throw ConfigError("trash qubit " + std::to_string(q) + " out of range");
  }
  const int total = n + k + 1;
  if (total > kMaxQubits) {
    throw ResourceError("SWAP test needs " + std::to_string(total) + " qubits, budget is " +
                        std::to_string(kMaxQubits));
  }
  // Appended qubits are less significant, so |psi> (x) |0...0> places amplitude i at i << (k+1).
  std::vector<Amplitude> amps(std::size_t{1} << total, Amplitude{0, 0});
  const auto src = system.amplitudes();
  for (std::size_t i = 0; i < src.size(); ++i) amps[i << (k + 1)] = src[i];
  StateVector full = StateVector::from_amplitudes(std::move(amps));

  const int ancilla = n + k;
  apply_gate(full, Gate::h(ancilla));
  for (int j = 0; j < k; ++j) apply_gate(full, Gate::cswap(ancilla, trash[j], n + j));
  apply_gate(full, Gate::h(ancilla));
  const int anc[] = {ancilla};
  return trash_zero_probability(full, anc);
}

}  // namespace qae
