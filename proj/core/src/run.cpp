#include "dexws/run.hpp"

#include "dexws/error.hpp"

#include <ostream>
#include <sstream>

namespace dexws {

using nlohmann::json;

Subcommand parse_subcommand(const std::string& name) {
  if (name == "sample") return Subcommand::Sample;
  if (name == "workspace") return Subcommand::Workspace;
  if (name == "volume") return Subcommand::Volume;
  if (name == "optimize") return Subcommand::Optimize;
  throw ConfigError("unknown subcommand '" + name + "' (sample|workspace|volume|optimize)");
}

std::string to_string(Subcommand s) {
  switch (s) {
    case Subcommand::Sample: return "sample";
    case Subcommand::Workspace: return "workspace";
    case Subcommand::Volume: return "volume";
    case Subcommand::Optimize: return "optimize";
  }
  return "unknown";
}

namespace {

class OutputSet {
 public:
  explicit OutputSet(const std::filesystem::path& dir) : dir_(dir) {}

  void add(const std::string& name, const std::string& contents) {
    write_text_file(dir_ / name, contents);
    files_.push_back({name, sha256_hex(contents), contents.size()});
  }

  std::vector<ManifestEntry> take() { return std::move(files_); }

 private:
  std::filesystem::path dir_;
  std::vector<ManifestEntry> files_;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string mm(double metres) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f mm", metres * 1e3);
  return buf;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

ScoredCloud scored_run(const RunConfig& cfg, std::size_t threads) {
  const DHChain chain = cfg.chain();
  PointCloud cloud = sample_workspace(chain, cfg.sampler, cfg.xi, threads);
  return score_cloud(chain, std::move(cloud), cfg.dexterity, threads);
}

}  // namespace

RunManifest run_subcommand(Subcommand sub, const RunConfig& cfg, std::ostream& log,
                           std::size_t threads) {
  RunManifest manifest;
  manifest.tool_version = tool_version();
  manifest.subcommand = to_string(sub);
  manifest.config_hash = sha256_hex(config_to_json(cfg).dump());
  manifest.seed = cfg.seed;
  manifest.started_at = utc_timestamp();

  OutputSet out(cfg.output_dir);
  switch (sub) {
    case Subcommand::Sample: {
      const DHChain chain = cfg.chain();
      const PointCloud cloud = sample_workspace(chain, cfg.sampler, cfg.xi, threads);
      std::ostringstream csv;
      write_point_cloud_csv(csv, cloud, chain);
      out.add("points.csv", csv.str());
      log << "sampled " << cloud.size() << " joint states (" << to_string(cfg.sampler.scheme)
          << ", seed " << cfg.seed << ")\n";
      break;
    }
    case Subcommand::Workspace: {
      const ScoredCloud scored = scored_run(cfg, threads);
      const WorkspaceAnalysis analysis = analyze(scored, cfg.partition);
      std::ostringstream cloud_csv, boundary_csv;
      write_scored_cloud_csv(cloud_csv, scored);
      write_boundary_csv(boundary_csv, analysis);
      out.add("scored_cloud.csv", cloud_csv.str());
      out.add("boundary.csv", boundary_csv.str());
      log << scored.cloud.size() << " points, " << scored.dexterous_count
          << " dexterous (threshold " << sci(scored.threshold) << ")\n";
      break;
    }
    case Subcommand::Volume: {
      const ScoredCloud scored = scored_run(cfg, threads);
      const WorkspaceAnalysis analysis = analyze(scored, cfg.partition);
      out.add("report.json", dump(analysis_to_json(analysis, scored)));
      log << "V_reach " << sci(analysis.reachable.volume) << " m^3, V_dex "
          << sci(analysis.dexterous.volume) << " m^3, R_ed "
          << mm(analysis.dexterous.equivalent_radius) << "\n";
      break;
    }
    case Subcommand::Optimize: {
      const ExplorationResult result =
          explore(cfg.exploration, cfg.pipeline(), cfg.seed, threads);
      std::ostringstream csv;
      write_sweep_csv(csv, result);
      out.add("sweep.csv", csv.str());
      out.add("selection.json", dump(selection_to_json(result)));
      const Candidate& best = result.best();
      log << result.candidates.size() << " candidates (" << to_string(result.mode)
          << "), selected a1 " << mm(best.xi.a1) << ", a3 " << mm(best.xi.a3) << ", a5 "
          << mm(best.xi.a5) << ": V_dex " << sci(best.v_dex()) << " m^3, R_ed "
          << mm(best.r_ed()) << "\n";
      break;
    }
  }

  manifest.files = out.take();
  manifest.finished_at = utc_timestamp();
  write_text_file(cfg.output_dir / "manifest.json", dump(manifest_to_json(manifest)));
  log << "wrote " << manifest.files.size() + 1 << " files to " << cfg.output_dir.string()
      << "\n";
  return manifest;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ConstraintViolation*>(&e))
    return 2;
  if (dynamic_cast<const IoError*>(&e)) return 1;
  if (dynamic_cast<const Error*>(&e)) return 3;
  return 1;
}

json error_record(const std::exception& e) {
  json err = {{"message", e.what()}};
  if (const auto* typed = dynamic_cast<const Error*>(&e)) {
    err["kind"] = typed->kind();
  } else {
    err["kind"] = "internal_error";
  }
  if (const auto* empty = dynamic_cast<const EmptyDexterousSet*>(&e)) {
    err["score_min"] = empty->score_min;
    err["score_max"] = empty->score_max;
    err["threshold"] = empty->threshold;
  }
  if (const auto* none = dynamic_cast<const NoCandidate*>(&e))
    err["best_radius_m"] = none->best_radius;
  err["exit_code"] = exit_code_for(e);
  return {{"error", err}};
}

}  // namespace dexws
