#include "dexws/config.hpp"

#include "dexws/error.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace dexws {

using nlohmann::json;

namespace {

// Walks one JSON object, remembering which keys were read so the rest can
// be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string path) : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) fail(path_, "expected an object");
  }

  [[noreturn]] static void fail(const std::string& field, const std::string& what) {
    throw ConfigError(field + ": " + what);
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
  }

  std::optional<double> number(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) fail(field(key), "expected a number");
    return v->get<double>();
  }

  std::optional<std::int64_t> integer(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) fail(field(key), "expected an integer");
    return v->get<std::int64_t>();
  }

  std::optional<std::size_t> count(const std::string& key, std::size_t min) {
    const auto v = integer(key);
    if (!v) return std::nullopt;
    if (*v < static_cast<std::int64_t>(min))
      fail(field(key), "must be >= " + std::to_string(min));
    return static_cast<std::size_t>(*v);
  }

  std::optional<std::string> string(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) fail(field(key), "expected a string");
    return v->get<std::string>();
  }

  std::optional<bool> boolean(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) fail(field(key), "expected true or false");
    return v->get<bool>();
  }

  std::optional<std::vector<double>> numbers(const std::string& key, std::size_t size) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_array() || v->size() != size)
      fail(field(key), "expected an array of " + std::to_string(size) + " numbers");
    std::vector<double> out;
    for (const json& e : *v) {
      if (!e.is_number()) fail(field(key), "expected numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : object_.items())
      if (!seen_.count(key)) fail(field(key), "unknown key '" + key + "'");
  }

 private:
  const json& object_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename Enum>
Enum pick(const std::string& field, const std::string& value,
          std::initializer_list<std::pair<const char*, Enum>> options) {
  std::string allowed;
  for (const auto& [name, e] : options) {
    if (value == name) return e;
    allowed += allowed.empty() ? name : std::string("|") + name;
  }
  ObjectReader::fail(field, "unknown value '" + value + "' (expected " + allowed + ")");
}

std::size_t preset_samples(Preset p) {
  return p == Preset::Paper ? SamplerConfig::kVolumeSamples : SamplerConfig::kStatisticsSamples;
}

std::size_t preset_candidate_samples(Preset p) {
  return p == Preset::Paper ? std::size_t{100'000} : SamplerConfig::kStatisticsSamples;
}

void validate_xi(const LinkLengths& xi, double total_max) {
  try {
    check_link_lower_bounds(xi);
  } catch (const ConstraintViolation& e) {
    throw ConfigError(std::string("xi: ") + e.what());
  }
  if (!satisfies_link_constraints(xi, total_max)) {
    std::ostringstream msg;
    msg << "xi: total length " << xi.total() * 1e3 << " mm exceeds L_total <= "
        << total_max * 1e3 << " mm";
    throw ConfigError(msg.str());
  }
}

Interval read_interval(ObjectReader& r, const std::string& key, double scale, Interval fallback) {
  const auto v = r.numbers(key, 2);
  if (!v) return fallback;
  return {(*v)[0] * scale, (*v)[1] * scale};
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

DHChain RunConfig::chain() const {
  if (!dh_rows.empty()) return DHChain(dh_rows);
  if (xi) return build_prrrr_chain(*xi);
  throw ConfigError("config: set either 'xi' or 'chain'");
}

PipelineConfig RunConfig::pipeline() const { return {sampler, dexterity, partition}; }

void RunConfig::apply_preset(Preset p) {
  preset = p;
  if (!n_samples_explicit) sampler.n_samples = preset_samples(p);
  if (!candidate_samples_explicit) exploration.samples_per_candidate = preset_candidate_samples(p);
}

void RunConfig::set_seed(std::uint64_t s) {
  seed = s;
  sampler.seed = s;
}

void RunConfig::set_samples(std::size_t n) {
  if (n < 1) throw ConfigError("samples must be >= 1");
  sampler.n_samples = n;
  exploration.samples_per_candidate = n;
  n_samples_explicit = true;
  candidate_samples_explicit = true;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream msg;
    msg << source << ":" << line << ":" << column << ": parse error: " << e.what();
    throw ConfigError(msg.str());
  }

  RunConfig cfg;
  ObjectReader root(doc, "");

  if (const auto units = root.string("units"))
    cfg.units = pick<LengthUnit>("units", *units,
                                 {{"mm", LengthUnit::Millimetre}, {"m", LengthUnit::Metre}});
  const double scale = cfg.units == LengthUnit::Millimetre ? 1e-3 : 1.0;

  if (const auto preset = root.string("preset")) cfg.preset = parse_preset(*preset);
  if (const auto seed = root.integer("seed")) {
    if (*seed < 0) ObjectReader::fail("seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(*seed);
  }
  if (const auto out = root.string("output_dir")) cfg.output_dir = *out;

  if (const auto xi = root.numbers("xi", 3))
    cfg.xi = LinkLengths{(*xi)[0] * scale, (*xi)[1] * scale, (*xi)[2] * scale};

  if (const json* rows = root.find("chain")) {
    if (!rows->is_array() || rows->empty()) ObjectReader::fail("chain", "expected a non-empty array");
    for (std::size_t i = 0; i < rows->size(); ++i) {
      ObjectReader r((*rows)[i], "chain[" + std::to_string(i) + "]");
      DHRow row;
      const auto kind = r.string("kind");
      if (!kind) ObjectReader::fail(r.field("kind"), "required");
      row.kind = pick<JointKind>(r.field("kind"), *kind,
                                 {{"prismatic", JointKind::Prismatic}, {"revolute", JointKind::Revolute}});
      row.a = r.number("a").value_or(0.0) * scale;
      row.alpha = deg_to_rad(r.number("alpha_deg").value_or(0.0));
      row.d_offset = r.number("d").value_or(0.0) * scale;
      row.theta_offset = deg_to_rad(r.number("theta_offset_deg").value_or(0.0));
      const double joint_scale = row.kind == JointKind::Prismatic ? scale : deg_to_rad(1.0);
      const auto q_min = r.number("q_min");
      const auto q_max = r.number("q_max");
      if (!q_min || !q_max) ObjectReader::fail(r.field("q_min"), "q_min and q_max are required");
      row.q_min = *q_min * joint_scale;
      row.q_max = *q_max * joint_scale;
      r.reject_unknown();
      cfg.dh_rows.push_back(row);
    }
  }
  if (cfg.xi && !cfg.dh_rows.empty()) ObjectReader::fail("chain", "set either 'xi' or 'chain', not both");

  if (const json* s = root.find("sampler")) {
    ObjectReader r(*s, "sampler");
    if (const auto n = r.count("n_samples", 1)) {
      cfg.sampler.n_samples = *n;
      cfg.n_samples_explicit = true;
    }
    if (const auto scheme = r.string("scheme"))
      cfg.sampler.scheme = pick<SamplingScheme>(
          r.field("scheme"), *scheme, {{"beta", SamplingScheme::Beta}, {"uniform", SamplingScheme::Uniform}});
    if (const auto v = r.number("beta_floor")) cfg.sampler.beta_floor = *v;
    if (const auto v = r.number("beta_scale")) cfg.sampler.beta_scale = *v;
    if (const auto v = r.number("prismatic_stroke_unit")) cfg.sampler.prismatic_stroke_unit = *v * scale;
    r.reject_unknown();
  }

  if (const json* d = root.find("dexterity")) {
    ObjectReader r(*d, "dexterity");
    if (const auto v = r.integer("m_task")) cfg.dexterity.m_task = static_cast<int>(*v);
    if (const auto v = r.number("m_ref")) cfg.dexterity.m_ref = *v;
    if (const auto v = r.boolean("include_prismatic")) cfg.dexterity.include_prismatic = *v;
    r.reject_unknown();
  }

  if (const json* p = root.find("partition")) {
    ObjectReader r(*p, "partition");
    if (const auto v = r.count("s_n", 1)) cfg.partition.s_n = *v;
    if (const auto v = r.count("s_m", 2)) cfg.partition.s_m = *v;
    if (const auto v = r.count("fit_order_reach", 1)) cfg.partition.fit_order_reach = static_cast<int>(*v);
    if (const auto v = r.count("fit_order_dex", 1)) cfg.partition.fit_order_dex = static_cast<int>(*v);
    if (const auto v = r.count("min_points_per_column", 1)) cfg.partition.min_points_per_column = *v;
    if (const auto axis = r.string("slice_axis"))
      cfg.partition.slice_axis =
          pick<Axis>(r.field("slice_axis"), *axis, {{"x", Axis::X}, {"y", Axis::Y}, {"z", Axis::Z}});
    r.reject_unknown();
  }

  if (const json* e = root.find("exploration")) {
    ObjectReader r(*e, "exploration");
    ExplorationConfig& x = cfg.exploration;
    x.range_a1 = read_interval(r, "range_a1", scale, x.range_a1);
    x.range_a3 = read_interval(r, "range_a3", scale, x.range_a3);
    x.range_a5 = read_interval(r, "range_a5", scale, x.range_a5);
    if (const auto v = r.number("step")) x.step = *v * scale;
    if (const auto v = r.number("total_max")) x.total_max = *v * scale;
    if (const auto mode = r.string("mode"))
      x.mode = pick<ExplorationMode>(r.field("mode"), *mode,
                                     {{"full", ExplorationMode::Full},
                                      {"simplified", ExplorationMode::SimplifiedTotalSaturated}});
    if (const auto v = r.count("samples_per_candidate", 1)) {
      x.samples_per_candidate = *v;
      cfg.candidate_samples_explicit = true;
    }
    if (const json* sel = r.find("selection")) {
      ObjectReader s(*sel, "exploration.selection");
      const auto rule = s.string("rule");
      if (!rule) ObjectReader::fail(s.field("rule"), "required");
      x.selection.rule = pick<SelectionRule>(
          s.field("rule"), *rule,
          {{"max_dex_volume", SelectionRule::MaxDexVolume},
           {"min_total_length", SelectionRule::MinTotalLengthWithRadiusFloor}});
      if (const auto v = s.number("r_floor")) x.selection.r_floor = *v * scale;
      s.reject_unknown();
    }
    r.reject_unknown();
  }

  root.reject_unknown();

  cfg.sampler.seed = cfg.seed;
  cfg.apply_preset(cfg.preset);
  cfg.sampler.validate();
  cfg.dexterity.validate();
  cfg.partition.validate();
  cfg.exploration.validate();
  if (cfg.xi) validate_xi(*cfg.xi, cfg.exploration.total_max);
  if (!cfg.dh_rows.empty()) {
    try {
      DHChain check(cfg.dh_rows);
    } catch (const ConstraintViolation& e) {
      throw ConfigError(std::string("chain: ") + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

std::string to_string(Preset p) { return p == Preset::Paper ? "paper" : "fast"; }

std::string to_string(SamplingScheme s) { return s == SamplingScheme::Beta ? "beta" : "uniform"; }

std::string to_string(ExplorationMode m) {
  return m == ExplorationMode::Full ? "full" : "simplified";
}

std::string to_string(SelectionRule r) {
  return r == SelectionRule::MaxDexVolume ? "max_dex_volume" : "min_total_length";
}

std::string to_string(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "y";
}

Preset parse_preset(const std::string& name) {
  return pick<Preset>("preset", name, {{"paper", Preset::Paper}, {"fast", Preset::Fast}});
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["units_in_file"] = cfg.units == LengthUnit::Millimetre ? "mm" : "m";
  j["preset"] = to_string(cfg.preset);
  j["seed"] = cfg.seed;
  if (cfg.xi) j["xi_m"] = {cfg.xi->a1, cfg.xi->a3, cfg.xi->a5};
  if (!cfg.dh_rows.empty()) {
    json rows = json::array();
    for (const DHRow& r : cfg.dh_rows)
      rows.push_back({{"kind", r.kind == JointKind::Prismatic ? "prismatic" : "revolute"},
                      {"a_m", r.a},
                      {"alpha_rad", r.alpha},
                      {"d_m", r.d_offset},
                      {"theta_offset_rad", r.theta_offset},
                      {"q_min", r.q_min},
                      {"q_max", r.q_max}});
    j["chain"] = rows;
  }
  j["sampler"] = {{"n_samples", cfg.sampler.n_samples},
                  {"scheme", to_string(cfg.sampler.scheme)},
                  {"beta_floor", cfg.sampler.beta_floor},
                  {"beta_scale", cfg.sampler.beta_scale},
                  {"prismatic_stroke_unit_m", cfg.sampler.prismatic_stroke_unit}};
  j["dexterity"] = {{"m_task", cfg.dexterity.m_task},
                    {"m_ref", cfg.dexterity.m_ref},
                    {"include_prismatic", cfg.dexterity.include_prismatic}};
  j["partition"] = {{"s_n", cfg.partition.s_n},
                    {"s_m", cfg.partition.s_m},
                    {"fit_order_reach", cfg.partition.fit_order_reach},
                    {"fit_order_dex", cfg.partition.fit_order_dex},
                    {"min_points_per_column", cfg.partition.min_points_per_column},
                    {"slice_axis", to_string(cfg.partition.slice_axis)}};
  const ExplorationConfig& x = cfg.exploration;
  j["exploration"] = {{"range_a1_m", {x.range_a1.lower, x.range_a1.upper}},
                      {"range_a3_m", {x.range_a3.lower, x.range_a3.upper}},
                      {"range_a5_m", {x.range_a5.lower, x.range_a5.upper}},
                      {"step_m", x.step},
                      {"total_max_m", x.total_max},
                      {"mode", to_string(x.mode)},
                      {"selection", {{"rule", to_string(x.selection.rule)}, {"r_floor_m", x.selection.r_floor}}},
                      {"samples_per_candidate", x.samples_per_candidate}};
  return j;
}

}  // namespace dexws
