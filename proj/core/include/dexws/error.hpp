#pragma once

#include <stdexcept>
#include <string>

namespace dexws {

/// Base class for every error raised by the library. `kind()` is a stable
/// machine-readable tag used in CLI error records.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// A link-length or joint-limit bound was violated.
class ConstraintViolation : public Error {
 public:
  explicit ConstraintViolation(const std::string& message)
      : Error("constraint_violation", message) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& message)
      : Error("dimension_mismatch", message) {}
};

/// Input point set has zero extent along the partition axis.
class DegenerateExtent : public Error {
 public:
  explicit DegenerateExtent(const std::string& message)
      : Error("degenerate_extent", message) {}
};

/// Fewer data points than polynomial coefficients.
class Underdetermined : public Error {
 public:
  explicit Underdetermined(const std::string& message)
      : Error("underdetermined", message) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& message)
      : Error("numerical_error", message) {}
};

/// Thresholding left no dexterous point. Carries the score statistics.
class EmptyDexterousSet : public Error {
 public:
  EmptyDexterousSet(const std::string& message, double score_min,
                    double score_max, double threshold)
      : Error("empty_dexterous_set", message),
        score_min(score_min),
        score_max(score_max),
        threshold(threshold) {}

  double score_min;
  double score_max;
  double threshold;
};

class EmptyGrid : public Error {
 public:
  explicit EmptyGrid(const std::string& message) : Error("empty_grid", message) {}
};

/// No candidate satisfies a selection rule. Carries the best radius seen.
class NoCandidate : public Error {
 public:
  NoCandidate(const std::string& message, double best_radius)
      : Error("no_candidate", message), best_radius(best_radius) {}

  double best_radius;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("config_error", message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io_error", message) {}
};

}  // namespace dexws
