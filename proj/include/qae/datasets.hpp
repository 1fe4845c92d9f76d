#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qae/types.hpp"

namespace qae {

enum class Label : int { Normal = 0, Anomaly = 1 };
enum class Split { Train, Validation, Test };

std::string to_string(Split split);
Split parse_split(const std::string& text);

struct LabeledDataset {
  FeatureMatrix features;
  std::vector<Label> labels;
  std::vector<Split> splits;
  std::string provenance;

  LabeledDataset() = default;
  explicit LabeledDataset(std::size_t n_features) : features(n_features) {}

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t n_features() const noexcept { return features.n_features(); }

  void append(std::span<const double> x, Label label, Split split);
  FeatureMatrix select(Split split) const;
  std::vector<Label> labels_of(Split split) const;
  std::size_t count(Split split) const;
  std::size_t count(Split split, Label label) const;
};

struct SplitSizes {
  std::size_t train = 0;
  std::size_t validation = 0;
  std::size_t test = 0;
};

// ---- 2D toy data ----------------------------------------------------------------

enum class ToyKind { Moons, Circle, Donut, SCurve };

std::string to_string(ToyKind kind);
ToyKind parse_toy_kind(const std::string& text);

struct ToyOptions {
  double noise = 0.05;
  double circle_inner = 0.5;   // anomaly ring radius relative to the unit normal ring
  double donut_inner = 0.6;    // normal annulus radii
  double donut_outer = 1.0;
  double donut_core = 0.3;     // anomaly disk radius
  bool swap_classes = false;   // exchange the normal and anomaly shapes
};

// Figure-matched defaults: noise 0.05 for moons and circle, 0.1 for the donut, 0 for the
// S curve.
ToyOptions default_toy_options(ToyKind kind);

// Split sizes used for each toy dataset at full scale.
SplitSizes reference_split_sizes(ToyKind kind);

// `count` raw (unscaled) points of one class. The S curve has no anomaly class; use
// gen_scurve_pseudo_anomalies instead.
FeatureMatrix sample_toy_class(ToyKind kind, Label label, std::size_t count, const ToyOptions& opts,
                               std::uint64_t seed);

// Two interleaving half circles, arc 0 = (cos t, -sin t) normal, arc 1 = (1 - cos t,
// sin t - 1/2) anomaly, t evenly spaced on [0, pi]. ceil(n/2) normal, floor(n/2) anomaly.
LabeledDataset gen_moons(std::size_t n, double noise, std::uint64_t seed);
// Unit circle (normal) around a concentric inner circle (anomaly).
LabeledDataset gen_circle(std::size_t n, double noise, std::uint64_t seed);
// Annulus [inner, outer] (normal) around a central disk of radius `core` (anomaly).
LabeledDataset gen_donut(std::size_t n, double inner, double outer, double core, double noise,
                         std::uint64_t seed);
// S manifold (sin t, sign(t)(cos t - 1)), t uniform on [-3pi/2, 3pi/2]; all normal.
LabeledDataset gen_s_curve(std::size_t n, double noise, std::uint64_t seed);

struct Box2 {
  double x0_min = 0, x0_max = 0, x1_min = 0, x1_max = 0;
};

Box2 bounding_box(const FeatureMatrix& points);

// Uniform draws over `region`, keeping only points farther than `min_dist` from every
// normal point. Throws DataError if more than 99.9% of candidates are rejected.
FeatureMatrix gen_scurve_pseudo_anomalies(const FeatureMatrix& normal, double min_dist, std::size_t n,
                                          std::uint64_t seed, const Box2& region);
FeatureMatrix gen_scurve_pseudo_anomalies(const FeatureMatrix& normal, double min_dist, std::size_t n,
                                          std::uint64_t seed);

// Raw train/validation/test splits from independent seed streams. Train and validation
// are normal only; the test split is half normal, half anomaly (S-curve anomalies are
// pseudo-anomalies at distance > 0.07 from every training point).
LabeledDataset make_toy_dataset(ToyKind kind, const SplitSizes& sizes, const ToyOptions& opts,
                                std::uint64_t seed);

// ---- credit-card fraud -----------------------------------------------------------

struct CreditCardOptions {
  std::size_t validation = 56863;
  std::size_t test_normal = 2275;
  std::size_t train_subsample = 0;  // 0 keeps the full training split
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kCreditCardFeatures = 5;

// Reads the Time, V1..V28, Amount, Class CSV. Features are V1..V5. Every Class=1 row goes
// to the test split; normal rows are shuffled with opts.seed, the last test_normal go to
// test, the `validation` before them to validation and the rest to train.
LabeledDataset load_creditcard(const std::filesystem::path& path, const CreditCardOptions& opts = {});

// ---- scaling ------------------------------------------------------------------------

struct ScalerParams {
  std::vector<double> min;
  std::vector<double> max;

  // x' = -pi + 2 pi (x - min) / (max - min), clipped to [-pi, pi].
  void transform(std::span<const double> in, std::span<double> out) const;
  std::vector<double> transform(std::span<const double> in) const;
};

ScalerParams fit_scaler(const LabeledDataset& data, Split split = Split::Train);
LabeledDataset apply_scaler(const LabeledDataset& data, const ScalerParams& params);

// ---- canonical dataset file -----------------------------------------------------------

// CSV with header f0,...,f{n-1},label,split.
std::string dataset_to_csv(const LabeledDataset& data);
void write_dataset_csv(const std::filesystem::path& path, const LabeledDataset& data);
LabeledDataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace qae
