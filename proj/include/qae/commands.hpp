#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qae/artifact.hpp"
#include "qae/config.hpp"
#include "qae/metrics.hpp"
#include "qae/training.hpp"

namespace qae {

// Default file names inside RunConfig::output_dir.
namespace files {
inline constexpr const char* kDataset = "dataset.csv";
inline constexpr const char* kScaler = "scaler.json";
inline constexpr const char* kModel = "model.json";
inline constexpr const char* kTrainReport = "train_report.csv";
inline constexpr const char* kScores = "scores.csv";
inline constexpr const char* kRoc = "roc.csv";
inline constexpr const char* kSummary = "summary.json";
inline constexpr const char* kGrid = "grid.csv";
}  // namespace files

struct EvalSummary {
  double auc = 0;
  double acc_at_60 = 0;
  double acc_at_80 = 0;
  std::size_t n_test = 0;
};

struct EvalReport {
  std::vector<double> scores;
  std::vector<Label> labels;
  RocCurve roc;
  EvalSummary summary;
};

// Raw (unscaled) dataset described by the spec; toy generators or the credit-card CSV.
LabeledDataset build_dataset(const DatasetSpec& spec);

// Scores the test split of an already-scaled dataset.
EvalReport evaluate(const QaeModel& model, const LabeledDataset& scaled);

std::string train_report_to_csv(const TrainReport& report);
std::string summary_to_json(const EvalSummary& summary);
std::string scores_to_csv(const EvalReport& report);

struct PrepareResult {
  std::filesystem::path dataset_path;
  std::size_t train = 0;
  std::size_t validation = 0;
  std::size_t test = 0;
};

PrepareResult cmd_prepare(const RunConfig& cfg);

struct TrainResult {
  std::filesystem::path model_path;
  std::filesystem::path report_path;
  TrainReport report;
};

TrainResult cmd_train(const RunConfig& cfg, const std::optional<std::filesystem::path>& dataset = {},
                      const EpochCallback& on_epoch = {});

EvalSummary cmd_eval(const RunConfig& cfg, const std::optional<std::filesystem::path>& model = {},
                     const std::optional<std::filesystem::path>& dataset = {});

Chi2Grid cmd_grid(const RunConfig& cfg, const std::optional<std::filesystem::path>& model = {});

}  // namespace qae
