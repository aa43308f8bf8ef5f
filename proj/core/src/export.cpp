#include "dexws/export.hpp"

#include "dexws/error.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#ifndef DEXWS_VERSION
#define DEXWS_VERSION "0.0.0"
#endif

namespace dexws {

using nlohmann::json;

namespace {

json coefficients_json(const Coefficients& c) {
  json out = json::array();
  for (Eigen::Index k = 0; k < c.size(); ++k) out.push_back(c[k]);
  return out;
}

json polynomial_json(const Polynomial& p) {
  if (p.coeffs.size() == 0) return nullptr;
  return {{"coeffs", coefficients_json(p.coeffs)},
          {"center_m", p.center},
          {"half_width_m", p.half_width},
          {"monomial_coeffs", coefficients_json(p.monomial())}};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  return out;
}

}  // namespace

std::string tool_version() { return DEXWS_VERSION; }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud, const DHChain& chain,
                           bool with_joints) {
  out << "x_m,y_m,z_m";
  if (with_joints)
    for (std::size_t j = 0; j < chain.dof(); ++j)
      out << ",q" << j + 1 << (chain.row(j).kind == JointKind::Prismatic ? "_m" : "_rad");
  out << '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const TipPosition& p = cloud.points[i];
    out << format_double(p.x()) << ',' << format_double(p.y()) << ',' << format_double(p.z());
    if (with_joints)
      for (double q : cloud.joint_state(i)) out << ',' << format_double(q);
    out << '\n';
  }
}

CsvCloud read_point_cloud_csv(std::istream& in) {
  CsvCloud out;
  std::string line;
  if (!std::getline(in, line)) throw IoError("point cloud CSV is empty");
  const auto header = split(line, ',');
  if (header.size() < 3 || header[0] != "x_m" || header[1] != "y_m" || header[2] != "z_m")
    throw IoError("point cloud CSV header must start with x_m,y_m,z_m");
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size())
      throw IoError("point cloud CSV row " + std::to_string(row) + " has the wrong field count");
    std::vector<double> values;
    for (const std::string& f : fields) values.push_back(std::strtod(f.c_str(), nullptr));
    out.points.emplace_back(values[0], values[1], values[2]);
    out.joints.emplace_back(values.begin() + 3, values.end());
  }
  return out;
}

void write_scored_cloud_csv(std::ostream& out, const ScoredCloud& scored) {
  out << "x_m,y_m,z_m,score,dexterous\n";
  for (std::size_t i = 0; i < scored.cloud.size(); ++i) {
    const TipPosition& p = scored.cloud.points[i];
    out << format_double(p.x()) << ',' << format_double(p.y()) << ',' << format_double(p.z())
        << ',' << format_double(scored.scores[i]) << ',' << (scored.dexterous[i] ? 1 : 0) << '\n';
  }
}

void write_boundary_csv(std::ostream& out, const WorkspaceAnalysis& analysis,
                        std::size_t samples_per_slice) {
  out << "set,slice_index,y_center_m,x_m,u_m,l_m\n";
  auto emit = [&](const char* name, const WorkspaceReport& report) {
    for (const SliceBoundary& s : report.slices) {
      if (s.fit_order < 1) continue;
      for (std::size_t k = 0; k < samples_per_slice; ++k) {
        const double t = samples_per_slice == 1
                             ? 0.0
                             : static_cast<double>(k) / static_cast<double>(samples_per_slice - 1);
        const double x = s.x_min + t * (s.x_max - s.x_min);
        out << name << ',' << s.slice_index << ',' << format_double(s.y_center) << ','
            << format_double(x) << ',' << format_double(s.upper(x)) << ','
            << format_double(s.lower(x)) << '\n';
      }
    }
  };
  emit("reachable", analysis.reachable);
  emit("dexterous", analysis.dexterous);
}

json report_to_json(const WorkspaceReport& report) {
  json slices = json::array();
  for (const SliceBoundary& s : report.slices) {
    slices.push_back({{"slice_index", s.slice_index},
                      {"y_center_m", s.y_center},
                      {"x_min_m", s.x_min},
                      {"x_max_m", s.x_max},
                      {"columns", s.columns.size()},
                      {"fit_order", s.fit_order},
                      {"upper", polynomial_json(s.upper)},
                      {"lower", polynomial_json(s.lower)},
                      {"area_m2", s.area},
                      {"crossing", s.crossing},
                      {"clamped", s.clamped}});
  }
  return {{"volume_m3", report.volume},
          {"equivalent_radius_m", report.equivalent_radius},
          {"point_count", report.point_count},
          {"fit_order", report.fit_order},
          {"slice_width_m", report.slice_width},
          {"slice_range_m", {report.slice_lower, report.slice_upper}},
          {"slice_axis", to_string(report.config.slice_axis)},
          {"s_n", report.config.s_n},
          {"s_m", report.config.s_m},
          {"crossing_slices", report.crossing_slices},
          {"clamped_slices", report.clamped_slices},
          {"skipped_slices", report.skipped_slices},
          {"polynomial_form",
           "coeffs ascending in t = (x - center_m) / half_width_m, constant term first; "
           "monomial_coeffs ascending in x"},
          {"slices", slices}};
}

json analysis_to_json(const WorkspaceAnalysis& analysis, const ScoredCloud& scored) {
  json j;
  j["reachable"] = report_to_json(analysis.reachable);
  j["dexterous"] = report_to_json(analysis.dexterous);
  j["scores"] = {{"min", scored.score_min},
                 {"max", scored.score_max},
                 {"threshold", scored.threshold},
                 {"dexterous_count", scored.dexterous_count},
                 {"point_count", scored.cloud.size()}};
  j["sampling"] = {{"seed", scored.cloud.seed}, {"scheme", to_string(scored.cloud.scheme)}};
  if (scored.cloud.link_lengths) {
    const LinkLengths& xi = *scored.cloud.link_lengths;
    j["xi_m"] = {xi.a1, xi.a3, xi.a5};
    j["l_total_m"] = xi.total();
  }
  return j;
}

void write_sweep_csv(std::ostream& out, const ExplorationResult& result) {
  out << "a1_m,a3_m,a5_m,l_total_m,v_reach_m3,v_dex_m3,r_ed_m,feasible,dexterous_ok\n";
  for (const Candidate& c : result.candidates) {
    out << format_double(c.xi.a1) << ',' << format_double(c.xi.a3) << ','
        << format_double(c.xi.a5) << ',' << format_double(c.xi.total()) << ','
        << format_double(c.v_reach()) << ',' << format_double(c.v_dex()) << ','
        << format_double(c.r_ed()) << ',' << (c.feasible ? 1 : 0) << ','
        << (c.dexterous_ok ? 1 : 0) << '\n';
  }
}

json selection_to_json(const ExplorationResult& result) {
  const Candidate& best = result.best();
  json sel = {{"rule", to_string(result.selection.rule)}};
  if (result.selection.rule == SelectionRule::MinTotalLengthWithRadiusFloor)
    sel["r_floor_m"] = result.selection.r_floor;
  return {{"selection", sel},
          {"mode", to_string(result.mode)},
          {"seed", result.seed},
          {"candidate_count", result.candidates.size()},
          {"v_max_m3", result.v_max},
          {"best",
           {{"index", result.best_index},
            {"xi_m", {best.xi.a1, best.xi.a3, best.xi.a5}},
            {"l_total_m", best.xi.total()},
            {"v_reach_m3", best.v_reach()},
            {"v_dex_m3", best.v_dex()},
            {"r_ed_m", best.r_ed()},
            {"r_reach_m", best.reachable.equivalent_radius}}}};
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw IoError("SHA-256 digest failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open for hashing");
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return sha256_hex(bytes.str());
}

json manifest_to_json(const RunManifest& manifest) {
  json files = json::array();
  for (const ManifestEntry& f : manifest.files)
    files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  return {{"tool", "dexws"},
          {"tool_version", manifest.tool_version},
          {"subcommand", manifest.subcommand},
          {"config_sha256", manifest.config_hash},
          {"seed", manifest.seed},
          {"started_at", manifest.started_at},
          {"finished_at", manifest.finished_at},
          {"files", files}};
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << contents;
  if (!out) throw IoError(path.string() + ": write failed");
}

}  // namespace dexws
