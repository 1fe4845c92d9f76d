// qae: prepare datasets, train quantum autoencoders, evaluate and export chi2 grids.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qae/commands.hpp"
#include "qae/errors.hpp"

namespace {

struct Options {
  std::string config;
  qae::ConfigOverrides overrides;
  std::optional<std::string> model;
  std::optional<std::string> dataset;
  std::optional<int> resolution;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--layers", o.overrides.layers, "Number of variational layers");
  cmd->add_option("--embedding", o.overrides.embedding, "Data embedding")
      ->check(CLI::IsMember({"standard", "parallel", "alternate"}));
  cmd->add_flag("--reupload", o.overrides.reupload, "Use the data-reuploading encoder");
  cmd->add_option("--composition", o.overrides.composition, "Rotation composition, e.g. Y or YXY");
  cmd->add_option("--trash-qubits", o.overrides.trash_qubits, "Number of trash (reference) qubits");
  cmd->add_option("--seed", o.overrides.seed, "Training seed");
  cmd->add_option("--out", o.overrides.output_dir, "Output directory");
}

std::optional<std::filesystem::path> as_path(const std::optional<std::string>& s) {
  if (!s) return std::nullopt;
  return std::filesystem::path(*s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum autoencoder anomaly detection"};
  app.require_subcommand(1);
  Options o;

  auto* prepare = app.add_subcommand("prepare", "Materialize the scaled dataset CSV with train/validation/test splits");
  add_common(prepare, o);

  auto* train = app.add_subcommand("train", "Train a model; writes model.json and train_report.csv");
  add_common(train, o);
  train->add_option("--dataset", o.dataset, "Prepared dataset CSV (default: <out>/dataset.csv)");
  train->add_flag("--quiet", o.quiet, "Do not print per-epoch progress");

  auto* eval = app.add_subcommand("eval", "Score the test split; writes scores.csv, roc.csv, summary.json");
  add_common(eval, o);
  eval->add_option("--model", o.model, "Model artifact (default: <out>/model.json)");
  eval->add_option("--dataset", o.dataset, "Prepared dataset CSV (default: <out>/dataset.csv)");

  auto* grid = app.add_subcommand("grid", "Export the chi2 decision-boundary grid as grid.csv");
  add_common(grid, o);
  grid->add_option("--model", o.model, "Model artifact (default: <out>/model.json)");
  grid->add_option("--resolution", o.resolution, "Cells per axis")->check(CLI::Range(2, 4096));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(qae::ExitCode::kUsage);
  }

  try {
    qae::RunConfig cfg = qae::load_run_config(o.config);
    qae::apply_overrides(cfg, o.overrides);
    if (o.resolution) cfg.grid.resolution = *o.resolution;

    if (*prepare) {
      const auto r = qae::cmd_prepare(cfg);
      std::cout << "wrote " << r.dataset_path.string() << "\n"
                << "train " << r.train << "\nvalidation " << r.validation << "\ntest " << r.test << "\n";
    } else if (*train) {
      qae::EpochCallback progress;
      if (!o.quiet) {
        progress = [](const qae::EpochRecord& e) {
          std::cerr << "epoch " << e.epoch << " train " << e.train_cost << " val " << e.val_cost << " lr " << e.lr
                    << "\n";
        };
      }
      const auto r = qae::cmd_train(cfg, as_path(o.dataset), progress);
      std::cout << "best epoch " << r.report.best_epoch << " val cost " << r.report.best_val_cost() << "\n"
                << "wrote " << r.model_path.string() << "\n";
    } else if (*eval) {
      const auto s = qae::cmd_eval(cfg, as_path(o.model), as_path(o.dataset));
      std::cout << qae::summary_to_json(s);
    } else if (*grid) {
      const auto g = qae::cmd_grid(cfg, as_path(o.model));
      std::cout << "wrote " << (cfg.output_dir / qae::files::kGrid).string() << " (" << g.size() << " cells)\n";
    }
  } catch (const qae::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(qae::ExitCode::kData);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(qae::ExitCode::kUsage);
  }
  return 0;
}
