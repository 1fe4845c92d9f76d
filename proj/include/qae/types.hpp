#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qae {

// Row-major sample matrix: one row per sample, `n_features` columns.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  explicit FeatureMatrix(std::size_t n_features) : n_features_(n_features) {}
  FeatureMatrix(std::size_t n_features, std::vector<double> values);

  std::size_t n_features() const noexcept { return n_features_; }
  std::size_t rows() const noexcept { return n_features_ == 0 ? 0 : values_.size() / n_features_; }
  bool empty() const noexcept { return rows() == 0; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * n_features_, n_features_};
  }
  std::span<double> row(std::size_t i) { return {values_.data() + i * n_features_, n_features_}; }

  void push_back(std::span<const double> sample);
  void reserve(std::size_t rows) { values_.reserve(rows * n_features_); }

  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::size_t n_features_ = 0;
  std::vector<double> values_;
};

}  // namespace qae
