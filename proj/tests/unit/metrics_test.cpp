#include "qae/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "qae/errors.hpp"

namespace qae {
namespace {

constexpr Label N = Label::Normal;
constexpr Label A = Label::Anomaly;

// Probability that a random anomaly outscores a random normal, ties counting one half.
double mann_whitney(const std::vector<double>& s, const std::vector<Label>& l) {
  double wins = 0;
  double pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (l[i] != A) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (l[j] != N) continue;
      pairs += 1;
      wins += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
    }
  }
  return wins / pairs;
}

TEST(RocAuc, PerfectSeparation) {
  const std::vector<double> s{2, 3, 0, 1};
  const std::vector<Label> l{A, A, N, N};
  const auto roc = roc_auc(s, l);
  EXPECT_EQ(roc.auc, 1.0);
  EXPECT_EQ(roc.thresholds.front(), std::numeric_limits<double>::infinity());
  EXPECT_EQ(roc.fpr.front(), 0.0);
  EXPECT_EQ(roc.tpr.front(), 0.0);
  EXPECT_EQ(roc.fpr.back(), 1.0);
  EXPECT_EQ(roc.tpr.back(), 1.0);
}

TEST(RocAuc, AllTiedIsHalf) {
  const std::vector<double> s(10, 0.7);
  std::vector<Label> l{A, N, N, A, N, A, A, N, N, N};
  EXPECT_EQ(roc_auc(s, l).auc, 0.5);
  std::shuffle(l.begin(), l.end(), std::mt19937(3));
  EXPECT_EQ(roc_auc(s, l).auc, 0.5);
}

TEST(RocAuc, HandEnumeratedPairs) {
  // Pairs (anomaly, normal): (0.1, 0.9) loss, (0.1, 0.3) loss, (0.8, 0.9) loss,
  // (0.8, 0.3) win.
  const std::vector<double> s{0.9, 0.1, 0.8, 0.3};
  const std::vector<Label> l{N, A, A, N};
  EXPECT_DOUBLE_EQ(mann_whitney(s, l), 0.25);
  EXPECT_NEAR(roc_auc(s, l).auc, 0.25, 1e-12);
  // Swapping the anomaly at 0.1 for one at 0.95 gives three wins and one loss.
  const std::vector<double> s2{0.9, 0.95, 0.8, 0.3};
  EXPECT_DOUBLE_EQ(mann_whitney(s2, l), 0.75);
  EXPECT_NEAR(roc_auc(s2, l).auc, 0.75, 1e-12);
}

TEST(RocAuc, MatchesMannWhitneyOnRandomSets) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 300;
    std::vector<double> s(n);
    std::vector<Label> l(n);
    // Coarse scores in half the trials so ties occur.
    const bool coarse = trial % 2 == 0;
    std::normal_distribution<double> g(0, 1);
    for (std::size_t i = 0; i < n; ++i) {
      l[i] = rng() % 3 == 0 ? A : N;
      const double v = g(rng) + (l[i] == A ? 0.7 : 0.0);
      s[i] = coarse ? std::round(v * 2) / 2 : v;
    }
    l[0] = A;
    l[1] = N;
    EXPECT_NEAR(roc_auc(s, l).auc, mann_whitney(s, l), 1e-12) << "trial " << trial;
  }
}

TEST(RocAuc, InvariantUnderMonotoneTransform) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> s(200), t(200);
  std::vector<Label> l(200);
  for (std::size_t i = 0; i < s.size(); ++i) {
    l[i] = i % 4 == 0 ? A : N;
    s[i] = u(rng) + (l[i] == A ? 0.2 : 0.0);
    t[i] = std::exp(3 * s[i]) - 7;
  }
  EXPECT_EQ(roc_auc(s, l).auc, roc_auc(t, l).auc);
}

TEST(RocAuc, Errors) {
  const std::vector<double> s{1, 2};
  EXPECT_THROW(roc_auc(s, std::vector<Label>{N, N}), UsageError);
  EXPECT_THROW(roc_auc(s, std::vector<Label>{N}), UsageError);
  EXPECT_THROW(roc_auc(std::vector<double>{1, std::nan("")}, std::vector<Label>{N, A}), UsageError);
}

TEST(RocAuc, BelowHalfIsReportedAsIs) {
  EXPECT_EQ(roc_auc(std::vector<double>{0, 1}, std::vector<Label>{A, N}).auc, 0.0);
}

TEST(AccuracyAtTpr, PerfectSeparation) {
  const std::vector<double> s{5, 6, 7, 1, 2, 3};
  const std::vector<Label> l{A, A, A, N, N, N};
  EXPECT_EQ(accuracy_at_tpr(s, l, 1.0).accuracy, 1.0);
  // Lower targets stop at the first threshold reaching them: 2 of 3 anomalies flagged, no
  // false positives.
  EXPECT_EQ(accuracy_at_tpr(s, l, 0.6).accuracy, 5.0 / 6.0);
  EXPECT_EQ(accuracy_at_tpr(s, l, 0.6).threshold, 6.0);
}

TEST(AccuracyAtTpr, HandEnumeratedFixture) {
  const std::vector<double> s{5, 4, 3, 2, 1, 0, 0, 0, 0, 0};
  const std::vector<Label> l{A, A, A, A, A, N, N, N, N, N};
  const auto op = accuracy_at_tpr(s, l, 0.6);
  EXPECT_EQ(op.threshold, 3.0);
  EXPECT_EQ(op.tpr, 0.6);
  EXPECT_EQ(op.accuracy, 0.8);
  const auto op80 = accuracy_at_tpr(s, l, 0.8);
  EXPECT_EQ(op80.threshold, 2.0);
  EXPECT_EQ(op80.accuracy, 0.9);
}

TEST(AccuracyAtTpr, MixedFixture) {
  // Descending: 9A 8N 7A 6A 5N 4A 3N 2N. Target 0.75 needs 3 of 4 anomalies: reached at
  // score 6 with one false positive, so accuracy = (3 + 3) / 8.
  const std::vector<double> s{9, 8, 7, 6, 5, 4, 3, 2};
  const std::vector<Label> l{A, N, A, A, N, A, N, N};
  const auto op = accuracy_at_tpr(s, l, 0.75);
  EXPECT_EQ(op.threshold, 6.0);
  EXPECT_EQ(op.accuracy, 0.75);
}

TEST(AccuracyAtTpr, AllTiedFlagsEverything) {
  const std::vector<double> s(10, 1.25);
  const std::vector<Label> l{A, N, N, A, N, N, A, N, N, N};
  const auto op = accuracy_at_tpr(s, l, 0.6);
  EXPECT_EQ(op.tpr, 1.0);
  EXPECT_EQ(op.accuracy, 0.3);
}

TEST(Chi2Quantile, PinnedValues) {
  EXPECT_NEAR(chi2_2dof_quantile(0.80), 3.2189, 5e-5);
  EXPECT_NEAR(chi2_2dof_quantile(0.90), 4.6052, 5e-5);
  EXPECT_NEAR(chi2_2dof_quantile(0.95), 5.9915, 5e-5);
  EXPECT_NEAR(chi2_2dof_quantile(0.98), 7.8240, 5e-5);
}

TEST(Chi2Quantile, AgreesWithBoost) {
  const boost::math::chi_squared dist(2.0);
  for (double q : kContourConfidences) {
    const double expected = boost::math::quantile(dist, q);
    EXPECT_EQ(std::round(chi2_2dof_quantile(q) * 1e4), std::round(expected * 1e4)) << q;
    EXPECT_NEAR(chi2_2dof_quantile(q), expected, 1e-12);
  }
  for (double q = 0.01; q < 1; q += 0.07) {
    EXPECT_NEAR(chi2_2dof_quantile(q), boost::math::quantile(dist, q), 1e-11) << q;
  }
}

QaeModel two_feature_model(int layers, bool reupload) {
  QaeModel m;
  m.encoder.layers = layers;
  m.encoder.reupload = reupload;
  m.theta = ParameterSet::zeros(m.encoder);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3, 3);
  for (double& v : m.theta.values()) v = u(rng);
  m.trash_qubits = {1};
  return m;
}

TEST(Chi2Grid, MinimumIsZeroAtArgmax) {
  const QaeModel m = two_feature_model(3, true);
  const GridSpec spec{{-3, 3, -3, 3}, 31};
  const Chi2Grid g = chi2_grid(m, spec);
  ASSERT_EQ(g.size(), 31u * 31u);
  EXPECT_EQ(g.chi2[g.argmax], 0.0);
  EXPECT_EQ(*std::min_element(g.chi2.begin(), g.chi2.end()), 0.0);
  EXPECT_EQ(g.x_hat[0], g.x0[g.argmax]);
  EXPECT_EQ(g.x_hat[1], g.x1[g.argmax]);
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_LE(g.p[k], g.p[g.argmax]);
    const double x[2] = {g.x0[k], g.x1[k]};
    EXPECT_NEAR(g.p[k], reconstruction_probability(m, x), 1e-14);
  }
  EXPECT_EQ(g.x0.front(), -3.0);
  EXPECT_EQ(g.x1.back(), 3.0);
  for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(g.thresholds[c], chi2_2dof_quantile(kContourConfidences[c]));
}

TEST(Chi2Grid, UniformModelIsFlat) {
  // Zero reuploading layers leave only U(theta_0), which never sees x.
  const QaeModel m = two_feature_model(0, true);
  const Chi2Grid g = chi2_grid(m, GridSpec{{-3, 3, -3, 3}, 20});
  for (double c : g.chi2) EXPECT_EQ(c, 0.0);
}

TEST(Chi2Grid, ScalerMapsRawBounds) {
  const QaeModel m = two_feature_model(2, false);
  ScalerParams sc{{0, 0}, {10, 10}};
  const Chi2Grid g = chi2_grid(m, GridSpec{{0, 10, 0, 10}, 5}, &sc);
  const Chi2Grid direct = chi2_grid(m, GridSpec{{-std::numbers::pi, std::numbers::pi, -std::numbers::pi,
                                                 std::numbers::pi}, 5});
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(g.p[k], direct.p[k], 1e-14);
  EXPECT_EQ(g.x0.back(), 10.0);
}

TEST(Chi2Grid, Errors) {
  QaeModel m = two_feature_model(1, false);
  EXPECT_THROW(chi2_grid(m, GridSpec{{-1, 1, -1, 1}, 1}), UsageError);
  EXPECT_THROW(chi2_grid(m, GridSpec{{1, 1, -1, 1}, 5}), UsageError);
  QaeModel one;
  one.encoder.n_features = 3;
  one.theta = ParameterSet::zeros(one.encoder);
  one.trash_qubits = {2};
  EXPECT_THROW(chi2_grid(one, GridSpec{{-1, 1, -1, 1}, 5}), UsageError);
}

TEST(Csv, RocAndGridLayout) {
  const auto roc = roc_auc(std::vector<double>{2, 3, 0, 1}, std::vector<Label>{A, A, N, N});
  const std::string text = roc_to_csv(roc);
  EXPECT_EQ(text.rfind("# auc=1\n", 0), 0u) << text;
  EXPECT_NE(text.find("threshold,fpr,tpr\n"), std::string::npos);
  EXPECT_NE(text.find("inf,0,0\n"), std::string::npos) << text;

  const Chi2Grid g = chi2_grid(two_feature_model(1, false), GridSpec{{-1, 1, -1, 1}, 10});
  std::istringstream in(grid_to_csv(g));
  std::string line;
  int meta = 0, rows = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      ++meta;
    } else if (line == "x0,x1,p,chi2") {
      header = true;
    } else {
      ++rows;
    }
  }
  EXPECT_TRUE(header);
  EXPECT_EQ(rows, 100);
  EXPECT_GE(meta, 4);
  EXPECT_NE(grid_to_csv(g).find("# contours=0.80:"), std::string::npos);
}

}  // namespace
}  // namespace qae
