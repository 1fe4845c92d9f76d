#include "qae/types.hpp"

#include "qae/errors.hpp"

namespace qae {

FeatureMatrix::FeatureMatrix(std::size_t n_features, std::vector<double> values)
    : n_features_(n_features), values_(std::move(values)) {
  if (n_features_ == 0 || values_.size() % n_features_ != 0) {
    throw ConfigError("feature matrix size is not a multiple of the feature count");
  }
}

void FeatureMatrix::push_back(std::span<const double> sample) {
  if (sample.size() != n_features_) throw ConfigError("sample width does not match feature count");
  values_.insert(values_.end(), sample.begin(), sample.end());
}

}  // namespace qae
