#pragma once

#include <span>
#include <vector>

#include "qae/circuits.hpp"
#include "qae/types.hpp"

namespace qae {

// Reconstruction probabilities are clamped to [kProbabilityFloor, 1] before taking logs.
inline constexpr double kProbabilityFloor = 1e-12;

// Slack allowed around [-pi, pi] before an input is treated as unscaled.
inline constexpr double kInputTolerance = 1e-9;

struct QaeModel {
  EncoderConfig encoder;
  ParameterSet theta;
  std::vector<int> trash_qubits;

  // The last k qubits of an n-qubit register.
  static std::vector<int> default_trash(int n_qubits, int k);

  void validate() const;
};

// Throws DataError when any coordinate lies outside [-pi - tol, pi + tol].
void check_scaled(std::span<const double> x);

// p(x, theta): probability that the trash qubits of the encoded state are all |0>.
double reconstruction_probability(const QaeModel& model, std::span<const double> x);

// Same observable, measured through the ancilla of a SWAP test against |0...0> references.
double swap_test_probability(const QaeModel& model, std::span<const double> x);

// -log(max(p, kProbabilityFloor)).
double score_from_probability(double p);

double anomaly_score(const QaeModel& model, std::span<const double> x);

// Mean anomaly score over the batch.
double batch_cost(const QaeModel& model, const FeatureMatrix& batch);

}  // namespace qae
