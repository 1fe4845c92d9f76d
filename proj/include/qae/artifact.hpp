#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "qae/datasets.hpp"
#include "qae/qae.hpp"

namespace qae {

inline constexpr int kArtifactVersion = 1;

struct ModelArtifact {
  QaeModel model;
  std::optional<ScalerParams> scaler;
  std::uint64_t training_seed = 0;
  std::string train_report_digest;  // FNV-1a 64 of the training report CSV, hex

  // Versioned JSON document; doubles are written so that they parse back bit-exactly.
  std::string to_text() const;
  static ModelArtifact from_text(const std::string& text);

  void save(const std::filesystem::path& path) const;
  static ModelArtifact load(const std::filesystem::path& path);
};

std::string fnv1a64_hex(const std::string& bytes);

}  // namespace qae
