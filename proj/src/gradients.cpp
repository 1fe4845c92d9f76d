#include "qae/gradients.hpp"

#include <string>

#include "qae/errors.hpp"
#include "qae/kernels.hpp"

namespace qae {

GradientVector parameter_shift_gradient(const QaeModel& model, const FeatureMatrix& batch) {
  return {parallel::cost_and_gradient(model, batch).gradient};
}

GradientVector finite_difference_gradient(const QaeModel& model, const FeatureMatrix& batch, double h) {
  if (!(h >= 1e-6 && h <= 1e-2)) {
    throw ConfigError("finite-difference step " + std::to_string(h) + " outside [1e-6, 1e-2]");
  }
  GradientVector grad;
  grad.values.resize(model.theta.size());
  QaeModel probe = model;
  for (std::size_t j = 0; j < grad.values.size(); ++j) {
    const double base = model.theta.values()[j];
    probe.theta.values()[j] = base + h;
    const double up = batch_cost(probe, batch);
    probe.theta.values()[j] = base - h;
    const double down = batch_cost(probe, batch);
    probe.theta.values()[j] = base;
    grad.values[j] = (up - down) / (2 * h);
  }
  return grad;
}

}  // namespace qae
