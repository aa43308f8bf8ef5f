#pragma once

#include "dexws/config.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace dexws {

/// "%.17g": enough digits for every double to re-read bit-identically.
std::string format_double(double v);

/// Header `x_m,y_m,z_m` plus, when `with_joints`, one `q<i>_m` or `q<i>_rad`
/// column per joint (unit from `chain`).
void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud, const DHChain& chain,
                           bool with_joints = true);

struct CsvCloud {
  std::vector<TipPosition> points;
  std::vector<std::vector<double>> joints;
};

/// Reads the format written by write_point_cloud_csv.
CsvCloud read_point_cloud_csv(std::istream& in);

/// Point cloud columns plus `score,dexterous`.
void write_scored_cloud_csv(std::ostream& out, const ScoredCloud& scored);

/// `set,slice_index,y_center_m,x_m,u_m,l_m`, 200 abscissae per fitted slice.
void write_boundary_csv(std::ostream& out, const WorkspaceAnalysis& analysis,
                        std::size_t samples_per_slice = 200);

nlohmann::json report_to_json(const WorkspaceReport& report);
nlohmann::json analysis_to_json(const WorkspaceAnalysis& analysis, const ScoredCloud& scored);

/// `a1_m,a3_m,a5_m,l_total_m,v_reach_m3,v_dex_m3,r_ed_m,feasible,dexterous_ok`
void write_sweep_csv(std::ostream& out, const ExplorationResult& result);
nlohmann::json selection_to_json(const ExplorationResult& result);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

struct ManifestEntry {
  std::string path;  ///< relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string tool_version;
  std::string subcommand;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string started_at;
  std::string finished_at;
  std::vector<ManifestEntry> files;
};

nlohmann::json manifest_to_json(const RunManifest& manifest);

/// Current UTC time as an ISO-8601 string.
std::string utc_timestamp();

/// Writes `contents` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

std::string tool_version();

}  // namespace dexws
