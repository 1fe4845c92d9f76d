#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef QAE_CLI_PATH
#error "QAE_CLI_PATH must point at the qae binary"
#endif

namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qae_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  fs::path write_config(const std::string& name, const std::string& json_text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << json_text;
    return p;
  }

  // Small moons run rooted in the test directory.
  std::string small_config(const std::string& extra_encoder = "", int layers = 1) {
    return R"({"dataset": {"kind": "moons", "train": 40, "validation": 10, "test": 20, "seed": 3},
               "encoder": {"layers": )" + std::to_string(layers) + extra_encoder + R"(},
               "training": {"epochs": 3, "batch_size": 10, "seed": 1},
               "output_dir": ")" + (dir_ / "run").string() + R"("})";
  }

  int run(const std::string& args) {
    const std::string cmd = std::string(QAE_CLI_PATH) + " " + args + " >" + (dir_ / "stdout.txt").string() + " 2>" +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(Cli, FullPipeline) {
  const auto cfg = write_config("cfg.json", small_config());
  ASSERT_EQ(run("prepare --config " + cfg.string()), 0) << slurp(dir_ / "stderr.txt");
  ASSERT_TRUE(fs::exists(dir_ / "run" / "dataset.csv"));
  ASSERT_TRUE(fs::exists(dir_ / "run" / "scaler.json"));
  ASSERT_EQ(run("train --quiet --config " + cfg.string()), 0) << slurp(dir_ / "stderr.txt");
  ASSERT_TRUE(fs::exists(dir_ / "run" / "model.json"));
  ASSERT_EQ(run("eval --config " + cfg.string()), 0) << slurp(dir_ / "stderr.txt");

  const auto summary = nlohmann::json::parse(slurp(dir_ / "run" / "summary.json"));
  EXPECT_EQ(summary.size(), 4u);
  for (const char* key : {"auc", "acc@60", "acc@80", "n_test"}) EXPECT_TRUE(summary.contains(key)) << key;
  EXPECT_EQ(summary["n_test"], 20);
  EXPECT_TRUE(fs::exists(dir_ / "run" / "roc.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "run" / "scores.csv"));

  ASSERT_EQ(run("grid --resolution 10 --config " + cfg.string()), 0) << slurp(dir_ / "stderr.txt");
  std::istringstream grid(slurp(dir_ / "run" / "grid.csv"));
  std::string line;
  int rows = 0;
  bool saw_contours = false, saw_resolution = false, saw_header = false;
  while (std::getline(grid, line)) {
    if (line.rfind("# contours=", 0) == 0) saw_contours = true;
    else if (line == "# resolution=10") saw_resolution = true;
    else if (line == "x0,x1,p,chi2") saw_header = true;
    else if (line[0] != '#') ++rows;
  }
  EXPECT_EQ(rows, 100);
  EXPECT_TRUE(saw_contours);
  EXPECT_TRUE(saw_resolution);
  EXPECT_TRUE(saw_header);
}

TEST_F(Cli, PrepareIsDeterministic) {
  const auto cfg = write_config("cfg.json", small_config());
  ASSERT_EQ(run("prepare --config " + cfg.string()), 0);
  const std::string first = slurp(dir_ / "run" / "dataset.csv");
  ASSERT_EQ(run("prepare --config " + cfg.string()), 0);
  EXPECT_EQ(slurp(dir_ / "run" / "dataset.csv"), first);
  EXPECT_FALSE(first.empty());
}

TEST_F(Cli, ZeroLayerModelHasFlatTrace) {
  // No trainable angles: every epoch reports the same costs and the model stores none.
  const auto cfg = write_config("cfg.json", small_config("", 0));
  ASSERT_EQ(run("prepare --config " + cfg.string()), 0);
  ASSERT_EQ(run("train --quiet --config " + cfg.string()), 0) << slurp(dir_ / "stderr.txt");
  std::istringstream report(slurp(dir_ / "run" / "train_report.csv"));
  std::string line;
  std::getline(report, line);
  EXPECT_EQ(line, "epoch,train_cost,val_cost,lr");
  std::vector<double> train_costs, val_costs;
  while (std::getline(report, line)) {
    std::istringstream fields(line);
    std::string epoch, train, val;
    std::getline(fields, epoch, ',');
    std::getline(fields, train, ',');
    std::getline(fields, val, ',');
    train_costs.push_back(std::stod(train));
    val_costs.push_back(std::stod(val));
  }
  ASSERT_EQ(train_costs.size(), 3u);
  for (std::size_t e = 1; e < 3; ++e) {
    EXPECT_NEAR(train_costs[e], train_costs[0], 1e-12);
    EXPECT_EQ(val_costs[e], val_costs[0]);
  }
  EXPECT_GT(val_costs[0], 0.0);
  const auto model = nlohmann::json::parse(slurp(dir_ / "run" / "model.json"));
  EXPECT_TRUE(model["parameters"]["values"].empty());
}

TEST_F(Cli, OverridesAreApplied) {
  const auto cfg = write_config("cfg.json", small_config());
  ASSERT_EQ(run("prepare --config " + cfg.string()), 0);
  ASSERT_EQ(run("train --quiet --layers 2 --reupload --composition YXY --seed 5 --config " + cfg.string()), 0)
      << slurp(dir_ / "stderr.txt");
  const auto model = nlohmann::json::parse(slurp(dir_ / "run" / "model.json"));
  EXPECT_EQ(model["encoder"]["layers"], 2);
  EXPECT_EQ(model["encoder"]["reupload"], true);
  EXPECT_EQ(model["encoder"]["composition"], "YXY");
  EXPECT_EQ(model["training_seed"], 5);
  EXPECT_EQ(model["parameters"]["values"].size(), 3u * 2u * 3u);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("train"), 1);
  EXPECT_EQ(run("bogus --config x"), 1);
  const auto bad_key = write_config("bad_key.json", R"({"dataset": {"kind": "moons"}, "layerz": 3})");
  EXPECT_EQ(run("prepare --config " + bad_key.string()), 1);
  const auto bad_json = write_config("bad_json.json", "{ not json");
  EXPECT_EQ(run("prepare --config " + bad_json.string()), 1);
  const auto too_many_trash = write_config("trash.json", R"({"dataset": {"kind": "moons"}, "trash_qubits": 2})");
  EXPECT_EQ(run("prepare --config " + too_many_trash.string()), 1);

  const auto cfg = write_config("cfg.json", small_config());
  // No dataset prepared yet.
  EXPECT_EQ(run("train --quiet --config " + cfg.string()), 2);
  const auto missing_cc = write_config(
      "cc.json", R"({"dataset": {"kind": "creditcard", "path": ")" + (dir_ / "absent.csv").string() +
                     R"("}, "output_dir": ")" + (dir_ / "cc").string() + R"("})");
  EXPECT_EQ(run("prepare --config " + missing_cc.string()), 2);

  fs::create_directories(dir_ / "run");
  std::ofstream(dir_ / "run" / "dataset.csv") << "f0,f1,label,split\n9.5,0,0,train\n0,0,0,validation\n";
  EXPECT_EQ(run("train --quiet --config " + cfg.string()), 2);
}

TEST_F(Cli, PresetConfigsParse) {
  const fs::path presets = fs::path(QAE_SOURCE_DIR) / "configs" / "2d";
  ASSERT_TRUE(fs::exists(presets));
  int n = 0;
  for (const auto& entry : fs::directory_iterator(presets)) {
    const std::string text = slurp(entry.path());
    auto doc = nlohmann::json::parse(text);
    doc["output_dir"] = (dir_ / "preset").string();
    doc["dataset"]["train"] = 20;
    doc["dataset"]["validation"] = 10;
    doc["dataset"]["test"] = 10;
    const auto cfg = write_config("preset.json", doc.dump());
    EXPECT_EQ(run("prepare --config " + cfg.string()), 0) << entry.path() << slurp(dir_ / "stderr.txt");
    ++n;
  }
  EXPECT_EQ(n, 36);
}

}  // namespace
