#pragma once

#include "dexws/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dexws {

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

enum class ExplorationMode { Full, SimplifiedTotalSaturated };

enum class SelectionRule { MaxDexVolume, MinTotalLengthWithRadiusFloor };

struct Selection {
  SelectionRule rule = SelectionRule::MaxDexVolume;
  double r_floor = 0.017;  ///< metres; MinTotalLengthWithRadiusFloor only
};

struct PipelineConfig {
  SamplerConfig sampler;
  DexterityConfig dexterity;
  PartitionConfig partition;
};

struct ExplorationConfig {
  Interval range_a1{0.003, 0.008};
  Interval range_a3{0.003, 0.012};
  Interval range_a5{0.015, 0.035};
  double step = 0.001;
  double total_max = LinkBounds::kMaxTotal;
  ExplorationMode mode = ExplorationMode::SimplifiedTotalSaturated;
  Selection selection;
  std::size_t samples_per_candidate = 100'000;

  void validate() const;
};

struct Candidate {
  LinkLengths xi;
  bool feasible = false;       ///< link-length constraints hold
  bool dexterous_ok = false;   ///< the pipeline produced a dexterous report
  std::string failure;         ///< pipeline error when !dexterous_ok
  WorkspaceReport reachable;   ///< slice column data stripped
  WorkspaceReport dexterous;

  double v_reach() const { return reachable.volume; }
  /// Zero when the dexterous set was empty.
  double v_dex() const { return dexterous_ok ? dexterous.volume : 0.0; }
  double r_ed() const { return dexterous_ok ? dexterous.equivalent_radius : 0.0; }
};

struct ExplorationResult {
  std::vector<Candidate> candidates;  ///< grid order
  std::size_t best_index = 0;
  double v_max = 0.0;
  Selection selection;
  ExplorationMode mode = ExplorationMode::SimplifiedTotalSaturated;
  std::uint64_t seed = 0;

  const Candidate& best() const { return candidates.at(best_index); }
};

/// Lattice L, L + step, ... <= U, rounded to the nanometre.
std::vector<double> lattice(const Interval& range, double step);

/// Feasible link-length vectors in a1-major, then a3, then a5 order.
/// Throws EmptyGrid.
std::vector<LinkLengths> enumerate_grid(const ExplorationConfig& cfg);

/// Builds the chain, samples, scores and analyses one design. Sampling
/// streams derive from `seed` alone, so all designs share the same joint-space
/// variates. An empty dexterous set yields dexterous_ok = false instead of
/// an exception.
Candidate evaluate(const LinkLengths& xi, const PipelineConfig& pipeline, std::uint64_t seed,
                   double total_max = LinkBounds::kMaxTotal, std::size_t threads = 0);

/// Index of the selected candidate. MaxDexVolume takes the largest V_dex;
/// MinTotalLengthWithRadiusFloor takes the smallest L_total with
/// R_ed >= r_floor. Ties: larger V_dex, then smaller L_total, then smaller
/// a1, then smaller a3. A single candidate is returned unconditionally.
/// Throws NoCandidate.
std::size_t select(const std::vector<Candidate>& candidates, const Selection& rule);

/// enumerate_grid -> evaluate (parallel over candidates) -> select.
ExplorationResult explore(const ExplorationConfig& cfg, const PipelineConfig& pipeline,
                          std::uint64_t seed, std::size_t threads = 0);

}  // namespace dexws
