#pragma once

#include <cstdint>
#include <random>

namespace dexws {

/// SplitMix64 finaliser; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of stream `stream` under master seed `seed`:
///   splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019)).
/// Every parallel work unit owns exactly one stream, so the samples do not
/// depend on how the units are scheduled.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Portable variate generator. Only the engine's raw output is used, so the
/// variates are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Gamma(shape, 1) by Marsaglia-Tsang, with the U^(1/shape) boost for
  /// shape < 1.
  double gamma(double shape);
  /// Beta(alpha, beta) as G_a / (G_a + G_b).
  double beta(double alpha, double beta);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace dexws
