#pragma once

#include <vector>

#include "qae/qae.hpp"

namespace qae {

// d batch_cost / d theta, same flat layout as ParameterSet::values().
struct GradientVector {
  std::vector<double> values;
};

// Exact gradient: parameter-shift rule on p, chained through the clamped -log and the
// batch mean. Samples at the probability floor contribute zero.
GradientVector parameter_shift_gradient(const QaeModel& model, const FeatureMatrix& batch);

// Central differences of batch_cost with step h in [1e-6, 1e-2]. Test oracle.
GradientVector finite_difference_gradient(const QaeModel& model, const FeatureMatrix& batch, double h);

}  // namespace qae
