#include "qae/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "qae/datasets.hpp"
#include "qae/errors.hpp"
#include "qae/kernels.hpp"

namespace qae {

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (!(decay_rate > 0 && decay_rate <= 1)) throw ConfigError("decay_rate must be in (0, 1]");
  if (decay_every < 1) throw ConfigError("decay_every must be >= 1");
  if (!(lr0 > 0) || !std::isfinite(lr0)) throw ConfigError("lr0 must be positive");
  if (!(init_low <= init_high)) throw ConfigError("init_low must not exceed init_high");
}

ParameterSet init_parameters(const EncoderConfig& cfg, const TrainConfig& tcfg) {
  ParameterSet theta = ParameterSet::zeros(cfg);
  std::mt19937_64 rng(tcfg.seed);
  std::uniform_real_distribution<double> dist(tcfg.init_low, tcfg.init_high);
  for (double& v : theta.values()) v = dist(rng);
  return theta;
}

double lr_at_epoch(const TrainConfig& tcfg, int epoch) {
  return tcfg.lr0 * std::pow(tcfg.decay_rate, epoch / tcfg.decay_every);
}

void adam_step(AdamState& state, ParameterSet& theta, const GradientVector& grad, double lr) {
  const std::size_t n = theta.size();
  if (grad.values.size() != n || state.m.size() != n) {
    throw ConfigError("Adam step shape mismatch: " + std::to_string(grad.values.size()) +
                      " gradient entries for " + std::to_string(n) + " parameters");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(grad.values[j])) {
      throw NumericError("non-finite gradient at parameter " + std::to_string(j) + " (step " +
                         std::to_string(state.step + 1) + ")");
    }
  }
  ++state.step;
  const double c1 = 1 - std::pow(AdamState::kBeta1, static_cast<double>(state.step));
  const double c2 = 1 - std::pow(AdamState::kBeta2, static_cast<double>(state.step));
  auto values = theta.values();
  for (std::size_t j = 0; j < n; ++j) {
    const double g = grad.values[j];
    state.m[j] = AdamState::kBeta1 * state.m[j] + (1 - AdamState::kBeta1) * g;
    state.v[j] = AdamState::kBeta2 * state.v[j] + (1 - AdamState::kBeta2) * g * g;
    const double m_hat = state.m[j] / c1;
    const double v_hat = state.v[j] / c2;
    values[j] -= lr * m_hat / (std::sqrt(v_hat) + AdamState::kEpsilon);
  }
}

TrainReport train(const QaeModel& model, const FeatureMatrix& train_set,
                  const FeatureMatrix& validation_set, const TrainConfig& tcfg,
                  const EpochCallback& on_epoch) {
  tcfg.validate();
  model.validate();
  if (train_set.empty()) throw UsageError("training split is empty");
  if (validation_set.empty()) throw UsageError("validation split is empty");

  QaeModel current = model;
  AdamState adam(current.theta.size());
  // Separate stream from init_parameters, which seeds with tcfg.seed directly.
  std::mt19937_64 shuffle_rng(tcfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(train_set.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainReport report;
  report.parameters = current.theta;
  double best = std::numeric_limits<double>::infinity();
  int since_best = 0;
  const std::size_t bs = static_cast<std::size_t>(tcfg.batch_size);

  for (int epoch = 0; epoch < tcfg.epochs; ++epoch) {
    const double lr = lr_at_epoch(tcfg, epoch);
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    double weighted_cost = 0;
    for (std::size_t start = 0; start < order.size(); start += bs) {
      const std::size_t stop = std::min(order.size(), start + bs);
      FeatureMatrix batch(train_set.n_features());
      batch.reserve(stop - start);
      for (std::size_t k = start; k < stop; ++k) batch.push_back(train_set.row(order[k]));

      CostGradient cg = parallel::cost_and_gradient(current, batch);
      weighted_cost += cg.cost * static_cast<double>(stop - start);
      if (!current.theta.values().empty()) {
        adam_step(adam, current.theta, GradientVector{std::move(cg.gradient)}, lr);
      }
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.lr = lr;
    rec.train_cost = weighted_cost / static_cast<double>(order.size());
    rec.val_cost = batch_cost(current, validation_set);
    if (!std::isfinite(rec.train_cost) || !std::isfinite(rec.val_cost)) {
      throw NumericError("non-finite cost at epoch " + std::to_string(epoch));
    }
    report.epochs.push_back(rec);
    if (on_epoch) on_epoch(rec);

    if (rec.val_cost < best) {
      best = rec.val_cost;
      report.best_epoch = epoch;
      report.parameters = current.theta;
      since_best = 0;
    } else if (tcfg.patience > 0 && ++since_best >= tcfg.patience) {
      report.stopped_early = true;
      break;
    }
  }
  return report;
}

TrainReport train(const QaeModel& model, const LabeledDataset& data, const TrainConfig& tcfg,
                  const EpochCallback& on_epoch) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.splits[i] != Split::Test && data.labels[i] != Label::Normal) {
      throw UsageError("row " + std::to_string(i) + ": anomalies are not allowed in train/validation splits");
    }
  }
  return train(model, data.select(Split::Train), data.select(Split::Validation), tcfg, on_epoch);
}

}  // namespace qae
