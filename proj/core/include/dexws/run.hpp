#pragma once

#include "dexws/config.hpp"
#include "dexws/export.hpp"

#include <iosfwd>
#include <string>

namespace dexws {

enum class Subcommand { Sample, Workspace, Volume, Optimize };

Subcommand parse_subcommand(const std::string& name);
std::string to_string(Subcommand s);

/// Output files per subcommand, all under cfg.output_dir:
///   sample    points.csv
///   workspace scored_cloud.csv, boundary.csv
///   volume    report.json
///   optimize  sweep.csv, selection.json
/// plus manifest.json for every run. A one-paragraph summary goes to `log`.
RunManifest run_subcommand(Subcommand sub, const RunConfig& cfg, std::ostream& log,
                           std::size_t threads = 0);

/// Exit status for an exception escaping run_subcommand: 2 for configuration
/// errors, 3 for pipeline errors, 1 otherwise.
int exit_code_for(const std::exception& e);

/// {"error": {"kind": ..., "message": ...}} plus kind-specific fields.
nlohmann::json error_record(const std::exception& e);

}  // namespace dexws
