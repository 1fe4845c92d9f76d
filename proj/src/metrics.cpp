#include "qae/metrics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qae/errors.hpp"
#include "qae/io.hpp"
#include "qae/kernels.hpp"

namespace qae {

namespace {

struct ClassCounts {
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

ClassCounts count_classes(std::span<const double> scores, std::span<const Label> labels) {
  if (scores.size() != labels.size()) throw UsageError("score and label counts differ");
  ClassCounts c;
  for (Label l : labels) (l == Label::Anomaly ? c.positives : c.negatives)++;
  return c;
}

// Sample indices ordered by descending score.
std::vector<std::size_t> descending_order(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

}  // namespace

RocCurve roc_auc(std::span<const double> scores, std::span<const Label> labels) {
  const ClassCounts c = count_classes(scores, labels);
  if (c.positives == 0 || c.negatives == 0) throw UsageError("ROC needs both normal and anomaly samples");
  for (double s : scores) {
    if (std::isnan(s)) throw UsageError("NaN anomaly score");
  }
  const auto order = descending_order(scores);

  RocCurve roc;
  roc.thresholds.push_back(std::numeric_limits<double>::infinity());
  roc.fpr.push_back(0);
  roc.tpr.push_back(0);
  std::size_t tp = 0;
  std::size_t fp = 0;
  double area = 0;
  for (std::size_t k = 0; k < order.size();) {
    const double t = scores[order[k]];
    for (; k < order.size() && scores[order[k]] == t; ++k) {
      (labels[order[k]] == Label::Anomaly ? tp : fp)++;
    }
    const double fpr = static_cast<double>(fp) / static_cast<double>(c.negatives);
    const double tpr = static_cast<double>(tp) / static_cast<double>(c.positives);
    area += (fpr - roc.fpr.back()) * (tpr + roc.tpr.back()) / 2;
    roc.thresholds.push_back(t);
    roc.fpr.push_back(fpr);
    roc.tpr.push_back(tpr);
  }
  roc.auc = area;
  return roc;
}

TprOperatingPoint accuracy_at_tpr(std::span<const double> scores, std::span<const Label> labels,
                                  double tpr_target) {
  const ClassCounts c = count_classes(scores, labels);
  if (c.positives == 0) throw UsageError("accuracy_at_tpr needs at least one anomaly");
  if (!(tpr_target > 0 && tpr_target <= 1)) throw UsageError("TPR target must be in (0, 1]");
  for (double s : scores) {
    if (std::isnan(s)) throw UsageError("NaN anomaly score");
  }
  const auto order = descending_order(scores);
  const double needed = tpr_target * static_cast<double>(c.positives) - 1e-9;

  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t k = 0; k < order.size();) {
    const double t = scores[order[k]];
    for (; k < order.size() && scores[order[k]] == t; ++k) {
      (labels[order[k]] == Label::Anomaly ? tp : fp)++;
    }
    if (static_cast<double>(tp) >= needed) {
      const std::size_t tn = c.negatives - fp;
      return {t, static_cast<double>(tp) / static_cast<double>(c.positives),
              static_cast<double>(tp + tn) / static_cast<double>(scores.size())};
    }
  }
  throw UsageError("TPR target unreachable");
}

double chi2_2dof_quantile(double confidence) {
  if (!(confidence > 0 && confidence < 1)) throw UsageError("confidence must be in (0, 1)");
  return -2 * std::log1p(-confidence);
}

Chi2Grid chi2_grid(const QaeModel& model, const GridSpec& spec, const ScalerParams* scaler) {
  if (model.encoder.n_features != 2) {
    throw UsageError("chi2 grid needs a 2-feature model, got " + std::to_string(model.encoder.n_features));
  }
  if (spec.resolution < 2) throw UsageError("grid resolution must be >= 2");
  const Box2& b = spec.bounds;
  if (!(b.x0_max > b.x0_min && b.x1_max > b.x1_min)) throw UsageError("grid bounds are empty");

  Chi2Grid grid;
  grid.bounds = b;
  grid.resolution = spec.resolution;
  const int r = spec.resolution;
  const std::size_t cells = static_cast<std::size_t>(r) * r;
  grid.x0.reserve(cells);
  grid.x1.reserve(cells);
  FeatureMatrix points(2);
  points.reserve(cells);
  for (int i = 0; i < r; ++i) {
    const double u = b.x0_min + (b.x0_max - b.x0_min) * i / (r - 1);
    for (int j = 0; j < r; ++j) {
      const double v = b.x1_min + (b.x1_max - b.x1_min) * j / (r - 1);
      grid.x0.push_back(u);
      grid.x1.push_back(v);
      const double raw[2] = {u, v};
      if (scaler) {
        const auto scaled = scaler->transform(raw);
        points.push_back(scaled);
      } else {
        points.push_back(raw);
      }
    }
  }
  grid.p = parallel::probabilities(model, points);
  grid.argmax = static_cast<std::size_t>(std::max_element(grid.p.begin(), grid.p.end()) - grid.p.begin());
  grid.x_hat = {grid.x0[grid.argmax], grid.x1[grid.argmax]};
  const double p_hat = std::max(grid.p[grid.argmax], kProbabilityFloor);
  grid.chi2.resize(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    const double ratio = std::max(grid.p[k], kProbabilityFloor) / p_hat;
    grid.chi2[k] = k == grid.argmax ? 0.0 : std::max(0.0, -2 * std::log(ratio));
  }
  for (std::size_t c = 0; c < kContourConfidences.size(); ++c) {
    grid.thresholds[c] = chi2_2dof_quantile(kContourConfidences[c]);
  }
  return grid;
}

std::string roc_to_csv(const RocCurve& roc) {
  std::string s = fmt::format("# auc={}\nthreshold,fpr,tpr\n", format_double(roc.auc));
  for (std::size_t k = 0; k < roc.thresholds.size(); ++k) {
    s += fmt::format("{},{},{}\n", format_double(roc.thresholds[k]), format_double(roc.fpr[k]),
                     format_double(roc.tpr[k]));
  }
  return s;
}

std::string grid_to_csv(const Chi2Grid& grid) {
  const Box2& b = grid.bounds;
  std::string s;
  s += fmt::format("# bounds={},{},{},{}\n", format_double(b.x0_min), format_double(b.x0_max),
                   format_double(b.x1_min), format_double(b.x1_max));
  s += fmt::format("# resolution={}\n", grid.resolution);
  s += fmt::format("# x_hat={},{}\n", format_double(grid.x_hat[0]), format_double(grid.x_hat[1]));
  s += "# contours=";
  for (std::size_t c = 0; c < kContourConfidences.size(); ++c) {
    s += fmt::format("{}{:.2f}:{}", c ? "," : "", kContourConfidences[c], format_double(grid.thresholds[c]));
  }
  s += "\nx0,x1,p,chi2\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    s += fmt::format("{},{},{},{}\n", format_double(grid.x0[k]), format_double(grid.x1[k]),
                     format_double(grid.p[k]), format_double(grid.chi2[k]));
  }
  return s;
}

}  // namespace qae
