#include "qae/qae.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qae/errors.hpp"
#include "qae/kernels.hpp"

namespace qae {

std::vector<int> QaeModel::default_trash(int n_qubits, int k) {
  if (k < 1 || k > n_qubits) {
    throw ConfigError("trash qubit count " + std::to_string(k) + " invalid for " +
                      std::to_string(n_qubits) + " qubits");
  }
  std::vector<int> trash(k);
  for (int j = 0; j < k; ++j) trash[j] = n_qubits - k + j;
  return trash;
}

void QaeModel::validate() const {
  encoder.validate();
  if (!theta.matches(encoder)) throw ConfigError("parameter shape does not match encoder config");
  if (trash_qubits.empty()) throw ConfigError("model has no trash qubits");
  const int n = encoder.n_qubits();
  for (std::size_t i = 0; i < trash_qubits.size(); ++i) {
    const int q = trash_qubits[i];
    if (q < 0 || q >= n) throw ConfigError("trash qubit " + std::to_string(q) + " out of range");
    if (std::find(trash_qubits.begin(), trash_qubits.begin() + i, q) != trash_qubits.begin() + i) {
      throw ConfigError("duplicate trash qubit " + std::to_string(q));
    }
  }
}

void check_scaled(std::span<const double> x) {
  constexpr double bound = std::numbers::pi + kInputTolerance;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(std::abs(x[i]) <= bound)) {
      throw DataError("feature " + std::to_string(i) + " = " + std::to_string(x[i]) +
                      " outside [-pi, pi]; was the input scaled?");
    }
  }
}

double reconstruction_probability(const QaeModel& model, std::span<const double> x) {
  check_scaled(x);
  return trash_zero_probability(encode(x, model.theta, model.encoder), model.trash_qubits);
}

double swap_test_probability(const QaeModel& model, std::span<const double> x) {
  check_scaled(x);
  return swap_test_probability(encode(x, model.theta, model.encoder), model.trash_qubits);
}

double score_from_probability(double p) { return -std::log(std::clamp(p, kProbabilityFloor, 1.0)); }

double anomaly_score(const QaeModel& model, std::span<const double> x) {
  return score_from_probability(reconstruction_probability(model, x));
}

double batch_cost(const QaeModel& model, const FeatureMatrix& batch) {
  if (batch.empty()) throw UsageError("batch_cost on an empty batch");
  const auto p = parallel::probabilities(model, batch);
  double sum = 0;
  for (double v : p) sum += score_from_probability(v);
  return sum / static_cast<double>(p.size());
}

}  // namespace qae
