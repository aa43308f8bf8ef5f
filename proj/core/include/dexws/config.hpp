#pragma once

#include "dexws/optimizer.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dexws {

enum class LengthUnit { Millimetre, Metre };

/// Sample budgets. Preset::Paper: 500k points for boundary/volume runs, 100k per
/// sweep candidate. Fast: 10k for both.
enum class Preset { Paper, Fast };

/// Validated settings for one CLI run. Every length is in metres; the file
/// unit is converted on load.
struct RunConfig {
  LengthUnit units = LengthUnit::Millimetre;
  Preset preset = Preset::Paper;
  std::optional<LinkLengths> xi;
  std::vector<DHRow> dh_rows;  ///< explicit chain; empty when xi is used
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "dexws_out";

  SamplerConfig sampler;
  DexterityConfig dexterity;
  PartitionConfig partition;
  ExplorationConfig exploration;

  bool n_samples_explicit = false;
  bool candidate_samples_explicit = false;

  bool has_chain() const { return xi.has_value() || !dh_rows.empty(); }
  /// Throws ConfigError when neither xi nor an explicit chain is set.
  DHChain chain() const;
  PipelineConfig pipeline() const;

  /// Re-applies preset sample counts to fields not set explicitly.
  void apply_preset(Preset p);
  /// Sets the seed on the run and the sampler.
  void set_seed(std::uint64_t s);
  /// Overrides both the per-run and per-candidate sample counts.
  void set_samples(std::size_t n);
};

/// Parses and validates a JSON configuration. Unknown keys are rejected.
/// `source` names the document in error messages.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");

/// Throws ConfigError (including missing files and parse errors with
/// line/column context).
RunConfig load_config(const std::filesystem::path& path);

/// Canonical echo of the effective configuration (lengths in metres).
nlohmann::json config_to_json(const RunConfig& cfg);

std::string to_string(Preset p);
std::string to_string(SamplingScheme s);
std::string to_string(ExplorationMode m);
std::string to_string(SelectionRule r);
std::string to_string(Axis a);
Preset parse_preset(const std::string& name);

}  // namespace dexws
