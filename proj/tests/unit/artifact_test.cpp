#include "qae/artifact.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "qae/errors.hpp"
#include "random_models.hpp"

namespace qae {
namespace {

namespace fs = std::filesystem;

ModelArtifact sample_artifact(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ModelArtifact a;
  a.model = testing::random_model(rng, 6, 4);
  if (seed % 2 == 0) {
    a.scaler = ScalerParams{};
    for (int f = 0; f < a.model.encoder.n_features; ++f) {
      a.scaler->min.push_back(-1.0 / (f + 3));
      a.scaler->max.push_back(0.1 + f * std::numbers::e);
    }
  }
  a.training_seed = seed * 977;
  a.train_report_digest = fnv1a64_hex("report " + std::to_string(seed));
  return a;
}

TEST(Artifact, TextRoundTripIsByteIdentical) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ModelArtifact a = sample_artifact(seed);
    const std::string text = a.to_text();
    const ModelArtifact b = ModelArtifact::from_text(text);
    EXPECT_EQ(b.to_text(), text);
    EXPECT_EQ(b.model.theta, a.model.theta);
    EXPECT_EQ(b.model.trash_qubits, a.model.trash_qubits);
    EXPECT_EQ(b.training_seed, a.training_seed);
    EXPECT_EQ(b.scaler.has_value(), a.scaler.has_value());
  }
}

TEST(Artifact, ReloadedModelScoresIdentically) {
  const fs::path dir = fs::temp_directory_path() / "qae_artifact_test";
  std::mt19937_64 rng(31);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ModelArtifact a = sample_artifact(seed);
    const fs::path path = dir / ("model" + std::to_string(seed) + ".json");
    a.save(path);
    const ModelArtifact b = ModelArtifact::load(path);
    const auto batch = testing::random_batch(rng, a.model.encoder.n_features, 8);
    for (std::size_t i = 0; i < batch.rows(); ++i) {
      EXPECT_NEAR(anomaly_score(b.model, batch.row(i)), anomaly_score(a.model, batch.row(i)), 1e-15);
    }
  }
}

TEST(Artifact, RejectsMalformedDocuments) {
  const std::string good = sample_artifact(2).to_text();
  EXPECT_THROW(ModelArtifact::from_text("{"), DataError);
  EXPECT_THROW(ModelArtifact::from_text("{}"), DataError);
  std::string wrong_version = good;
  wrong_version.replace(wrong_version.find("\"version\": 1"), 12, "\"version\": 9");
  EXPECT_THROW(ModelArtifact::from_text(wrong_version), DataError);
  EXPECT_THROW(ModelArtifact::load("/nonexistent/model.json"), Error);
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(fnv1a64_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a64_hex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(fnv1a64_hex("foobar"), "85944171f73967e8");
}

}  // namespace
}  // namespace qae
