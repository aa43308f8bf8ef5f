#pragma once

#include "dexws/kinematics.hpp"
#include "dexws/random.hpp"

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace dexws {

enum class SamplingScheme { Uniform, Beta };

struct SamplerConfig {
  /// Sample count used for manipulability statistics.
  static constexpr std::size_t kStatisticsSamples = 10'000;
  /// Sample count used for boundary and volume estimation.
  static constexpr std::size_t kVolumeSamples = 500'000;

  std::size_t n_samples = kStatisticsSamples;
  SamplingScheme scheme = SamplingScheme::Beta;
  std::uint64_t seed = 0;
  /// alpha = beta = range * beta_scale + beta_floor
  double beta_floor = 0.30;
  double beta_scale = 1.0 / (5.0 * std::numbers::pi);
  /// Length unit (metres) a prismatic stroke is expressed in before it enters
  /// the shape formula. The default measures strokes in millimetres.
  double prismatic_stroke_unit = 1e-3;

  /// Throws ConfigError.
  void validate() const;
};

struct BetaShape {
  double alpha = 1.0;
  double beta = 1.0;
};

BetaShape beta_params(const DHRow& row, const SamplerConfig& cfg);

/// n values uniform on [q_min, q_max].
std::vector<double> draw_uniform(const DHRow& row, std::size_t n, Rng& rng);

/// n values distributed as q_min + (q_max - q_min) * Beta(alpha, beta).
std::vector<double> draw_beta(const DHRow& row, std::size_t n, const SamplerConfig& cfg,
                              Rng& rng);

using JointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Tip positions and the joint states that produced them, index aligned.
struct PointCloud {
  std::vector<TipPosition> points;
  JointMatrix joint_states;
  std::optional<LinkLengths> link_lengths;
  std::uint64_t seed = 0;
  SamplingScheme scheme = SamplingScheme::Beta;

  std::size_t size() const { return points.size(); }
  std::span<const double> joint_state(std::size_t i) const {
    return {joint_states.data() + i * static_cast<std::size_t>(joint_states.cols()),
            static_cast<std::size_t>(joint_states.cols())};
  }
};

/// Samples per independent RNG stream. Sample i belongs to stream i / kBlock.
inline constexpr std::size_t kSampleBlock = 4096;

/// Draws cfg.n_samples joint states and maps them through forward
/// kinematics. Output is a pure function of (chain, cfg) for any thread count.
PointCloud sample_workspace(const DHChain& chain, const SamplerConfig& cfg,
                            std::optional<LinkLengths> link_lengths = std::nullopt,
                            std::size_t threads = 0);

/// Convenience overload for the PRRRR instrument.
PointCloud sample_workspace(const LinkLengths& xi, const SamplerConfig& cfg,
                            std::size_t threads = 0);

}  // namespace dexws
