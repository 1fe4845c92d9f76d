#pragma once

// Dense-matrix reference computations used only by tests. Nothing here calls the
// simulator kernels; everything is built from explicit matrices over <= 6 qubits.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qae/statevector.hpp"

namespace qae::oracle {

using C = std::complex<double>;
using Dense = std::vector<std::vector<C>>;

inline Dense identity(std::size_t n) {
  Dense m(n, std::vector<C>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

inline Dense matmul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c(n, std::vector<C>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Dense pauli(Pauli p) {
  switch (p) {
    case Pauli::X:
      return {{0.0, 1.0}, {1.0, 0.0}};
    case Pauli::Y:
      return {{0.0, C(0, -1)}, {C(0, 1), 0.0}};
    default:
      return {{1.0, 0.0}, {0.0, -1.0}};
  }
}

// exp(-i theta P / 2) by truncated Taylor series of the 2x2 matrix.
inline Dense rotation_by_series(Pauli p, double theta) {
  const Dense gen = pauli(p);
  Dense a(2, std::vector<C>(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a[i][j] = C(0, -theta / 2) * gen[i][j];
  Dense result = identity(2);
  Dense term = identity(2);
  for (int k = 1; k < 60; ++k) {
    term = matmul(term, a);
    for (auto& row : term)
      for (auto& v : row) v /= static_cast<double>(k);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) result[i][j] += term[i][j];
  }
  return result;
}

// Basis bit of qubit q in an n-qubit index (qubit 0 most significant).
inline int bit(std::size_t index, int q, int n) { return static_cast<int>((index >> (n - 1 - q)) & 1); }

// Full 2^n x 2^n unitary of a gate.
inline Dense gate_matrix(const Gate& g, int n) {
  const std::size_t dim = std::size_t{1} << n;
  Dense u(dim, std::vector<C>(dim, 0.0));
  if (g.arity() == 1) {
    Dense m;
    if (g.kind == GateKind::H) {
      const double r = 1 / std::sqrt(2.0);
      m = {{r, r}, {r, -r}};
    } else {
      const Pauli p = g.kind == GateKind::RX ? Pauli::X : g.kind == GateKind::RY ? Pauli::Y : Pauli::Z;
      m = rotation_by_series(p, g.angle);
    }
    const int q = g.qubits[0];
    for (std::size_t row = 0; row < dim; ++row)
      for (std::size_t col = 0; col < dim; ++col) {
        if ((row ^ col) & ~(std::size_t{1} << (n - 1 - q))) continue;
        u[row][col] = m[bit(row, q, n)][bit(col, q, n)];
      }
    return u;
  }
  // Permutation gates: map each basis column to its image.
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t img = col;
    if (g.kind == GateKind::CNOT) {
      if (bit(col, g.qubits[0], n)) img ^= std::size_t{1} << (n - 1 - g.qubits[1]);
    } else {
      const int a = g.qubits[1], b = g.qubits[2];
      if (bit(col, g.qubits[0], n) && bit(col, a, n) != bit(col, b, n)) {
        img ^= (std::size_t{1} << (n - 1 - a)) | (std::size_t{1} << (n - 1 - b));
      }
    }
    u[img][col] = 1.0;
  }
  return u;
}

inline std::vector<C> apply(const Dense& u, const std::vector<C>& v) {
  std::vector<C> out(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += u[i][j] * v[j];
  return out;
}

inline std::vector<C> run_dense(const std::vector<Gate>& gates, int n) {
  std::vector<C> v(std::size_t{1} << n, 0.0);
  v[0] = 1.0;
  for (const auto& g : gates) v = oracle::apply(gate_matrix(g, n), v);
  return v;
}

// <0...0| Tr_{not T}(|psi><psi|) |0...0>, through the explicit density matrix and the
// explicit reduced matrix on T.
inline double trash_zero_by_partial_trace(const std::vector<C>& psi, const std::vector<int>& trash) {
  const int n = static_cast<int>(std::log2(psi.size()));
  const std::size_t dim = psi.size();
  Dense rho(dim, std::vector<C>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) rho[i][j] = psi[i] * std::conj(psi[j]);

  const std::size_t k = trash.size();
  auto trash_index = [&](std::size_t full) {
    std::size_t t = 0;
    for (std::size_t a = 0; a < k; ++a) t = (t << 1) | bit(full, trash[a], n);
    return t;
  };
  auto rest_index = [&](std::size_t full) {
    std::size_t r = 0;
    for (int q = 0; q < n; ++q) {
      if (std::find(trash.begin(), trash.end(), q) != trash.end()) continue;
      r = (r << 1) | bit(full, q, n);
    }
    return r;
  };
  Dense reduced(std::size_t{1} << k, std::vector<C>(std::size_t{1} << k, 0.0));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      if (rest_index(i) != rest_index(j)) continue;
      reduced[trash_index(i)][trash_index(j)] += rho[i][j];
    }
  return reduced[0][0].real();
}

inline std::vector<C> random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<C> v(std::size_t{1} << n);
  double norm = 0;
  for (auto& a : v) {
    a = C(g(rng), g(rng));
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

}  // namespace qae::oracle
