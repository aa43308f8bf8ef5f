#pragma once

#include "dexws/sampling.hpp"

#include <cstdint>
#include <vector>

namespace dexws {

struct DexterityConfig {
  /// Task-space dimension m in M = det(J J^T)^(1/m); position only by default.
  int m_task = 3;
  /// Fraction of the realised score range a point must clear.
  double m_ref = 0.65;
  /// Whether prismatic Jacobian columns take part in the manipulability. The
  /// default scores the orientation-capable (revolute) joints only.
  bool include_prismatic = false;

  void validate() const;
};

/// det(J J^T)^(1/m_task) over the first m_task rows of J. A determinant in
/// (-1e-12, 0) is round-off and clamps to zero; anything below throws
/// NumericalError.
double manipulability(const Eigen::Ref<const Eigen::MatrixXd>& jacobian, int m_task = 3);

/// M / length_scale. Throws ConfigError when length_scale <= 0.
double relative_manipulability(double m, double length_scale);
double relative_manipulability(double m, const LinkLengths& xi);

/// tau = min + m_ref * (max - min)
double dexterity_threshold(double score_min, double score_max, double m_ref);

struct Classification {
  double score_min = 0.0;
  double score_max = 0.0;
  double threshold = 0.0;
  std::vector<std::uint8_t> dexterous;
  std::size_t dexterous_count = 0;
};

/// Marks score >= tau over the realised range. A zero-width range marks
/// every point dexterous.
Classification classify(const std::vector<double>& scores, double m_ref);

struct ScoredCloud {
  PointCloud cloud;
  std::vector<double> scores;
  double score_min = 0.0;
  double score_max = 0.0;
  double threshold = 0.0;
  std::vector<std::uint8_t> dexterous;
  std::size_t dexterous_count = 0;

  std::vector<TipPosition> dexterous_points() const;
};

/// Relative manipulability of every stored joint state, then thresholding.
/// The length scale is the cloud's a1 + a3 + a5 when known, otherwise the
/// chain's rigid length.
ScoredCloud score_cloud(const DHChain& chain, PointCloud cloud, const DexterityConfig& cfg,
                        std::size_t threads = 0);

}  // namespace dexws
