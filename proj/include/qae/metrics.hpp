#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "qae/datasets.hpp"
#include "qae/qae.hpp"

namespace qae {

// Anomalies are the positive class; higher scores are more anomalous. Point k flags every
// sample with score >= thresholds[k]. The first point uses +inf and sits at (0, 0).
struct RocCurve {
  std::vector<double> thresholds;
  std::vector<double> fpr;
  std::vector<double> tpr;
  double auc = 0;
};

// Threshold sweep with tied scores grouped into one step; trapezoidal AUC. AUC below 0.5
// is returned as is.
RocCurve roc_auc(std::span<const double> scores, std::span<const Label> labels);

struct TprOperatingPoint {
  double threshold = 0;
  double tpr = 0;
  double accuracy = 0;
};

// Largest threshold whose TPR reaches `tpr_target`; accuracy (TP + TN) / N there, using
// the raw class mix.
TprOperatingPoint accuracy_at_tpr(std::span<const double> scores, std::span<const Label> labels,
                                  double tpr_target);

// Quantile of the chi-squared distribution with 2 degrees of freedom: -2 log(1 - q).
double chi2_2dof_quantile(double confidence);

inline constexpr std::array<double, 4> kContourConfidences{0.80, 0.90, 0.95, 0.98};

struct GridSpec {
  Box2 bounds;  // in raw feature units when a scaler is supplied
  int resolution = 200;
};

struct Chi2Grid {
  Box2 bounds;
  int resolution = 0;
  std::vector<double> x0;  // resolution^2 cells, x0 varies slowest
  std::vector<double> x1;
  std::vector<double> p;
  std::vector<double> chi2;
  std::size_t argmax = 0;
  std::array<double, 2> x_hat{0, 0};
  std::array<double, 4> thresholds{};  // chi2_2dof_quantile of kContourConfidences

  std::size_t size() const noexcept { return p.size(); }
};

// chi2(x) = -2 log(p(x) / p(x_hat)) on a resolution x resolution grid, x_hat the grid
// argmax of p. Grid points are mapped through `scaler` (if given) like the training data.
Chi2Grid chi2_grid(const QaeModel& model, const GridSpec& spec, const ScalerParams* scaler = nullptr);

// "threshold,fpr,tpr" with a leading "# auc=<value>" line.
std::string roc_to_csv(const RocCurve& roc);

// "# key=value" metadata lines followed by "x0,x1,p,chi2".
std::string grid_to_csv(const Chi2Grid& grid);

}  // namespace qae
