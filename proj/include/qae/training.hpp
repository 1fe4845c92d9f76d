#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "qae/gradients.hpp"
#include "qae/qae.hpp"

namespace qae {

struct LabeledDataset;

struct TrainConfig {
  int epochs = 500;
  int batch_size = 100;
  double lr0 = 0.1;
  double decay_rate = 0.5;
  int decay_every = 100;
  double init_low = -std::numbers::pi;
  double init_high = std::numbers::pi;
  std::uint64_t seed = 0;
  // Epochs without validation improvement before stopping; <= 0 disables early stopping.
  int patience = 20;

  void validate() const;
};

struct AdamState {
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;

  std::vector<double> m;
  std::vector<double> v;
  long step = 0;

  explicit AdamState(std::size_t n = 0) : m(n, 0.0), v(n, 0.0) {}
};

struct EpochRecord {
  int epoch = 0;
  double train_cost = 0;  // sample-weighted mean of the mini-batch costs seen during the epoch
  double val_cost = 0;    // full validation split, after the epoch's last step
  double lr = 0;
};

struct TrainReport {
  std::vector<EpochRecord> epochs;
  int best_epoch = -1;
  bool stopped_early = false;
  ParameterSet parameters;  // best-epoch parameters

  double best_val_cost() const { return epochs.at(best_epoch).val_cost; }
};

// i.i.d. uniform draws on [init_low, init_high], deterministic in tcfg.seed.
ParameterSet init_parameters(const EncoderConfig& cfg, const TrainConfig& tcfg);

// Staircase decay lr0 * decay_rate^floor(epoch / decay_every).
double lr_at_epoch(const TrainConfig& tcfg, int epoch);

// Bias-corrected Adam update in place. Throws NumericError on a non-finite gradient.
void adam_step(AdamState& state, ParameterSet& theta, const GradientVector& grad, double lr);

using EpochCallback = std::function<void(const EpochRecord&)>;

// Mini-batch Adam on `train_set`, early stopping on `validation_set`. Starts from
// model.theta; the report holds the parameters of the best validation epoch.
TrainReport train(const QaeModel& model, const FeatureMatrix& train_set,
                  const FeatureMatrix& validation_set, const TrainConfig& tcfg,
                  const EpochCallback& on_epoch = {});

// Uses the train and validation splits, which must be normal-only.
TrainReport train(const QaeModel& model, const LabeledDataset& data, const TrainConfig& tcfg,
                  const EpochCallback& on_epoch = {});

}  // namespace qae
