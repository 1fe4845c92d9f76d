#include "qae/commands.hpp"

#include <fmt/format.h>

#include <numbers>

#include "json.hpp"
#include "qae/errors.hpp"
#include "qae/io.hpp"
#include "qae/kernels.hpp"

namespace qae {

using nlohmann::json;

namespace {

std::filesystem::path in_output(const RunConfig& cfg, const char* name) { return cfg.output_dir / name; }

void write_scaler(const std::filesystem::path& path, const ScalerParams& scaler) {
  const json j = {{"min", scaler.min}, {"max", scaler.max}};
  write_file_atomic(path, j.dump(2) + "\n");
}

std::optional<ScalerParams> read_scaler(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    const json j = json::parse(read_file(path));
    return ScalerParams{j.at("min").get<std::vector<double>>(), j.at("max").get<std::vector<double>>()};
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace

LabeledDataset build_dataset(const DatasetSpec& spec) {
  if (spec.is_creditcard()) {
    CreditCardOptions opts = spec.creditcard;
    opts.seed = spec.seed;
    return load_creditcard(spec.path, opts);
  }
  const ToyKind kind = parse_toy_kind(spec.kind);
  ToyOptions opts = default_toy_options(kind);
  if (spec.noise) opts.noise = *spec.noise;
  opts.swap_classes = spec.swap_classes;
  SplitSizes sizes = spec.sizes;
  const SplitSizes ref = reference_split_sizes(kind);
  if (sizes.train == 0) sizes.train = ref.train;
  if (sizes.validation == 0) sizes.validation = ref.validation;
  if (sizes.test == 0) sizes.test = ref.test;
  return make_toy_dataset(kind, sizes, opts, spec.seed);
}

EvalReport evaluate(const QaeModel& model, const LabeledDataset& scaled) {
  const FeatureMatrix test = scaled.select(Split::Test);
  if (test.empty()) throw UsageError("dataset has no test split");
  if (test.n_features() != static_cast<std::size_t>(model.encoder.n_features)) {
    throw UsageError(fmt::format("dataset has {} features, model expects {}", test.n_features(),
                                 model.encoder.n_features));
  }
  EvalReport r;
  r.labels = scaled.labels_of(Split::Test);
  const auto p = parallel::probabilities(model, test);
  r.scores.reserve(p.size());
  for (double v : p) r.scores.push_back(score_from_probability(v));
  r.roc = roc_auc(r.scores, r.labels);
  r.summary.auc = r.roc.auc;
  r.summary.acc_at_60 = accuracy_at_tpr(r.scores, r.labels, 0.60).accuracy;
  r.summary.acc_at_80 = accuracy_at_tpr(r.scores, r.labels, 0.80).accuracy;
  r.summary.n_test = r.scores.size();
  return r;
}

std::string train_report_to_csv(const TrainReport& report) {
  std::string s = "epoch,train_cost,val_cost,lr\n";
  for (const auto& e : report.epochs) {
    s += fmt::format("{},{},{},{}\n", e.epoch, format_double(e.train_cost), format_double(e.val_cost),
                     format_double(e.lr));
  }
  return s;
}

std::string summary_to_json(const EvalSummary& summary) {
  json j;
  j["auc"] = summary.auc;
  j["acc@60"] = summary.acc_at_60;
  j["acc@80"] = summary.acc_at_80;
  j["n_test"] = summary.n_test;
  return j.dump(2) + "\n";
}

std::string scores_to_csv(const EvalReport& report) {
  std::string s = "id,score,label\n";
  for (std::size_t i = 0; i < report.scores.size(); ++i) {
    s += fmt::format("{},{},{}\n", i, format_double(report.scores[i]),
                     report.labels[i] == Label::Anomaly ? 1 : 0);
  }
  return s;
}

PrepareResult cmd_prepare(const RunConfig& cfg) {
  cfg.validate();
  const LabeledDataset raw = build_dataset(cfg.dataset);
  const ScalerParams scaler = fit_scaler(raw, Split::Train);
  const LabeledDataset scaled = apply_scaler(raw, scaler);
  PrepareResult r;
  r.dataset_path = in_output(cfg, files::kDataset);
  write_dataset_csv(r.dataset_path, scaled);
  write_scaler(in_output(cfg, files::kScaler), scaler);
  r.train = scaled.count(Split::Train);
  r.validation = scaled.count(Split::Validation);
  r.test = scaled.count(Split::Test);
  return r;
}

TrainResult cmd_train(const RunConfig& cfg, const std::optional<std::filesystem::path>& dataset,
                      const EpochCallback& on_epoch) {
  cfg.validate();
  const auto data_path = dataset.value_or(in_output(cfg, files::kDataset));
  const LabeledDataset data = read_dataset_csv(data_path);
  if (data.n_features() != static_cast<std::size_t>(cfg.encoder.n_features)) {
    throw UsageError(fmt::format("{} has {} features, encoder expects {}", data_path.string(), data.n_features(),
                                 cfg.encoder.n_features));
  }

  ModelArtifact artifact;
  artifact.model.encoder = cfg.encoder;
  artifact.model.theta = init_parameters(cfg.encoder, cfg.training);
  artifact.model.trash_qubits = QaeModel::default_trash(cfg.encoder.n_qubits(), cfg.trash_qubits);
  artifact.scaler = read_scaler(data_path.parent_path() / files::kScaler);
  artifact.training_seed = cfg.training.seed;

  TrainResult r;
  r.report = train(artifact.model, data, cfg.training, on_epoch);
  artifact.model.theta = r.report.parameters;
  const std::string report_csv = train_report_to_csv(r.report);
  artifact.train_report_digest = fnv1a64_hex(report_csv);

  r.report_path = in_output(cfg, files::kTrainReport);
  r.model_path = in_output(cfg, files::kModel);
  write_file_atomic(r.report_path, report_csv);
  artifact.save(r.model_path);
  return r;
}

EvalSummary cmd_eval(const RunConfig& cfg, const std::optional<std::filesystem::path>& model,
                     const std::optional<std::filesystem::path>& dataset) {
  const ModelArtifact artifact = ModelArtifact::load(model.value_or(in_output(cfg, files::kModel)));
  const LabeledDataset data = read_dataset_csv(dataset.value_or(in_output(cfg, files::kDataset)));
  const EvalReport report = evaluate(artifact.model, data);
  write_file_atomic(in_output(cfg, files::kScores), scores_to_csv(report));
  write_file_atomic(in_output(cfg, files::kRoc), roc_to_csv(report.roc));
  write_file_atomic(in_output(cfg, files::kSummary), summary_to_json(report.summary));
  return report.summary;
}

Chi2Grid cmd_grid(const RunConfig& cfg, const std::optional<std::filesystem::path>& model) {
  const ModelArtifact artifact = ModelArtifact::load(model.value_or(in_output(cfg, files::kModel)));
  if (artifact.model.encoder.n_features != 2) {
    throw UsageError(fmt::format("grid needs a 2-feature model, artifact has {}", artifact.model.encoder.n_features));
  }
  GridSpec spec;
  spec.resolution = cfg.grid.resolution;
  const ScalerParams* scaler = artifact.scaler ? &*artifact.scaler : nullptr;
  if (cfg.grid.bounds) {
    spec.bounds = *cfg.grid.bounds;
  } else if (scaler) {
    spec.bounds = {scaler->min[0], scaler->max[0], scaler->min[1], scaler->max[1]};
  } else {
    constexpr double pi = std::numbers::pi;
    spec.bounds = {-pi, pi, -pi, pi};
  }
  Chi2Grid grid = chi2_grid(artifact.model, spec, scaler);
  write_file_atomic(in_output(cfg, files::kGrid), grid_to_csv(grid));
  return grid;
}

}  // namespace qae
