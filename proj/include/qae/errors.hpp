#pragma once

#include <stdexcept>
#include <string>

namespace qae {

// Process exit codes used by the command-line tool.
enum class ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kData = 2,
  kNumeric = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

// Invalid configuration: qubit counts, shapes, embedding parameters.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ExitCode::kUsage, what) {}
};

// Malformed circuit, e.g. a controlled gate whose control equals its target.
class CircuitError : public Error {
 public:
  explicit CircuitError(const std::string& what) : Error(ExitCode::kUsage, what) {}
};

// Simulation would exceed the qubit budget.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(ExitCode::kUsage, what) {}
};

// API or command misuse: empty batches, single-class labels, wrong dimensionality.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ExitCode::kUsage, what) {}
};

// Bad input data: unparsable CSV cells, unscaled features, degenerate columns.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ExitCode::kData, what) {}
};

// Non-finite values during optimization.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ExitCode::kNumeric, what) {}
};

}  // namespace qae
