#include "qae/kernels.hpp"

#include <numbers>

#include "qae/errors.hpp"

namespace qae {

namespace detail {

double probability_and_shift_gradient(const QaeModel& model, std::span<const double> x,
                                      std::span<double> dp) {
  const auto gates = encoder_gates(x, model.theta, model.encoder);
  StateVector prefix(model.encoder.n_qubits());
  StateVector s = prefix;  // scratch; assignment reuses its buffer
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const Gate& gate = gates[g];
    if (gate.parameter >= 0) {
      double shifted[2];
      for (int side = 0; side < 2; ++side) {
        s = prefix;
        Gate moved = gate;
        moved.angle += side == 0 ? std::numbers::pi / 2 : -std::numbers::pi / 2;
        apply_gate(s, moved);
        apply_gates(s, std::span(gates).subspan(g + 1));
        shifted[side] = trash_zero_probability(s, model.trash_qubits);
      }
      dp[gate.parameter] = (shifted[0] - shifted[1]) / 2;
    }
    apply_gate(prefix, gate);
  }
  return trash_zero_probability(prefix, model.trash_qubits);
}

void check_batch(const QaeModel& model, const FeatureMatrix& batch) {
  model.validate();
  if (batch.empty()) throw UsageError("empty sample batch");
  if (batch.n_features() != static_cast<std::size_t>(model.encoder.n_features)) {
    throw UsageError("batch has " + std::to_string(batch.n_features()) + " features, model expects " +
                     std::to_string(model.encoder.n_features));
  }
  for (std::size_t i = 0; i < batch.rows(); ++i) check_scaled(batch.row(i));
  for (const auto& g : encoder_gates(batch.row(0), model.theta, model.encoder)) {
    if (g.parameter >= 0 && !g.is_rotation()) {
      throw UsageError("unsupported model: trainable gate is not a Pauli rotation");
    }
  }
}

CostGradient reduce(const QaeModel& model, std::vector<double> probabilities,
                    const std::vector<double>& per_sample_dp) {
  const std::size_t n = probabilities.size();
  const std::size_t np = model.theta.size();
  CostGradient out;
  out.gradient.assign(np, 0.0);
  double cost = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = probabilities[i];
    cost += score_from_probability(p);
    // The clamp is flat below the floor, so those samples carry no gradient.
    if (p < kProbabilityFloor) continue;
    const double w = -1.0 / std::min(p, 1.0);
    for (std::size_t j = 0; j < np; ++j) out.gradient[j] += w * per_sample_dp[i * np + j];
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  out.cost = cost * inv_n;
  for (double& g : out.gradient) g *= inv_n;
  out.probabilities = std::move(probabilities);
  return out;
}

}  // namespace detail

namespace serial {

std::vector<double> probabilities(const QaeModel& model, const FeatureMatrix& batch) {
  detail::check_batch(model, batch);
  std::vector<double> p(batch.rows());
  for (std::size_t i = 0; i < batch.rows(); ++i) {
    p[i] = trash_zero_probability(encode(batch.row(i), model.theta, model.encoder), model.trash_qubits);
  }
  return p;
}

CostGradient cost_and_gradient(const QaeModel& model, const FeatureMatrix& batch) {
  detail::check_batch(model, batch);
  const std::size_t n = batch.rows();
  const std::size_t np = model.theta.size();
  std::vector<double> p(n);
  std::vector<double> dp(n * np, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = detail::probability_and_shift_gradient(model, batch.row(i),
                                                  std::span(dp).subspan(i * np, np));
  }
  return detail::reduce(model, std::move(p), dp);
}

}  // namespace serial

namespace parallel {

std::vector<double> probabilities(const QaeModel& model, const FeatureMatrix& batch) {
  detail::check_batch(model, batch);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(batch.rows());
  std::vector<double> p(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    p[i] = trash_zero_probability(encode(batch.row(i), model.theta, model.encoder), model.trash_qubits);
  }
  return p;
}

CostGradient cost_and_gradient(const QaeModel& model, const FeatureMatrix& batch) {
  detail::check_batch(model, batch);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(batch.rows());
  const std::size_t np = model.theta.size();
  std::vector<double> p(n);
  std::vector<double> dp(n * np, 0.0);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    p[i] = detail::probability_and_shift_gradient(model, batch.row(i),
                                                  std::span(dp).subspan(i * np, np));
  }
  return detail::reduce(model, std::move(p), dp);
}

}  // namespace parallel

}  // namespace qae
