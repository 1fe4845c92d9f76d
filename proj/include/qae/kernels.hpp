#pragma once

// Batch kernels over samples. `serial` is the reference implementation; `parallel`
// distributes samples over OpenMP threads and must agree with it bit for bit, since both
// write per-sample results into fixed slots and reduce them in sample order.

#include <span>
#include <vector>

#include "qae/qae.hpp"

namespace qae {

struct CostGradient {
  double cost = 0;                 // mean clamped -log p over the batch
  std::vector<double> gradient;    // d cost / d theta, flat parameter order
  std::vector<double> probabilities;  // unclamped p per sample
};

namespace detail {

// p(x) and dp/dtheta for one sample by the parameter-shift rule. `dp` has one slot per
// parameter. Reuses the prefix state up to each trainable gate.
double probability_and_shift_gradient(const QaeModel& model, std::span<const double> x,
                                      std::span<double> dp);

// Validates the model and every row so that the kernels themselves never throw.
void check_batch(const QaeModel& model, const FeatureMatrix& batch);

CostGradient reduce(const QaeModel& model, std::vector<double> probabilities,
                    const std::vector<double>& per_sample_dp);

}  // namespace detail

namespace serial {
std::vector<double> probabilities(const QaeModel& model, const FeatureMatrix& batch);
CostGradient cost_and_gradient(const QaeModel& model, const FeatureMatrix& batch);
}  // namespace serial

namespace parallel {
std::vector<double> probabilities(const QaeModel& model, const FeatureMatrix& batch);
CostGradient cost_and_gradient(const QaeModel& model, const FeatureMatrix& batch);
}  // namespace parallel

}  // namespace qae
