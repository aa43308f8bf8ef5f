#include "dexws/optimizer.hpp"

#include "dexws/error.hpp"
#include "dexws/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dexws {

namespace {

double round_nm(double v) { return std::round(v * 1e9) / 1e9; }

// Lengths compared on the nanometre lattice so sums like 3 + 8 + 34 mm
// compare equal regardless of summation order.
long long nm(double v) { return std::llround(v * 1e9); }

void strip_columns(WorkspaceReport& report) {
  for (SliceBoundary& s : report.slices) {
    s.columns.clear();
    s.columns.shrink_to_fit();
  }
}

// True when a should be preferred over b on the shared tie-break chain.
bool tie_break_prefers(const Candidate& a, const Candidate& b) {
  if (a.v_dex() != b.v_dex()) return a.v_dex() > b.v_dex();
  if (nm(a.xi.total()) != nm(b.xi.total())) return nm(a.xi.total()) < nm(b.xi.total());
  if (nm(a.xi.a1) != nm(b.xi.a1)) return nm(a.xi.a1) < nm(b.xi.a1);
  return nm(a.xi.a3) < nm(b.xi.a3);
}

}  // namespace

void ExplorationConfig::validate() const {
  for (const Interval* r : {&range_a1, &range_a3, &range_a5})
    if (!(r->lower <= r->upper)) throw ConfigError("exploration range lower bound exceeds upper");
  if (!(step > 0.0)) throw ConfigError("exploration.step must be > 0");
  if (!(total_max > 0.0)) throw ConfigError("exploration.total_max must be > 0");
  if (samples_per_candidate < 1) throw ConfigError("exploration.samples_per_candidate must be >= 1");
  if (selection.rule == SelectionRule::MinTotalLengthWithRadiusFloor && !(selection.r_floor >= 0.0))
    throw ConfigError("selection.r_floor must be >= 0");
}

std::vector<double> lattice(const Interval& range, double step) {
  std::vector<double> out;
  const auto count = static_cast<long long>(std::floor((range.upper - range.lower) / step + 1e-9));
  for (long long k = 0; k <= count; ++k)
    out.push_back(round_nm(range.lower + static_cast<double>(k) * step));
  return out;
}

std::vector<LinkLengths> enumerate_grid(const ExplorationConfig& cfg) {
  cfg.validate();
  std::vector<LinkLengths> grid;
  const auto a1s = lattice(cfg.range_a1, cfg.step);
  const auto a3s = lattice(cfg.range_a3, cfg.step);

  if (cfg.mode == ExplorationMode::Full) {
    const auto a5s = lattice(cfg.range_a5, cfg.step);
    for (double a1 : a1s)
      for (double a3 : a3s)
        for (double a5 : a5s) {
          const LinkLengths xi{a1, a3, a5};
          if (satisfies_link_constraints(xi, cfg.total_max)) grid.push_back(xi);
        }
  } else {
    for (double a1 : a1s)
      for (double a3 : a3s) {
        const double a5 = round_nm(cfg.total_max - a1 - a3);
        if (nm(a5) < nm(cfg.range_a5.lower) || nm(a5) > nm(cfg.range_a5.upper)) continue;
        const LinkLengths xi{a1, a3, a5};
        if (satisfies_link_constraints(xi, cfg.total_max)) grid.push_back(xi);
      }
  }
  if (grid.empty()) throw EmptyGrid("no feasible link-length vector in the exploration ranges");
  return grid;
}

Candidate evaluate(const LinkLengths& xi, const PipelineConfig& pipeline, std::uint64_t seed,
                   double total_max, std::size_t threads) {
  Candidate c;
  c.xi = xi;
  c.feasible = satisfies_link_constraints(xi, total_max);

  const DHChain chain = build_prrrr_chain(xi);
  SamplerConfig sampler = pipeline.sampler;
  sampler.seed = seed;
  PointCloud cloud = sample_workspace(chain, sampler, xi, threads);
  const ScoredCloud scored = score_cloud(chain, std::move(cloud), pipeline.dexterity, threads);

  c.reachable = estimate_workspace(scored.cloud.points, pipeline.partition,
                                   pipeline.partition.fit_order_reach);
  strip_columns(c.reachable);
  try {
    const std::vector<TipPosition> dex = scored.dexterous_points();
    if (dex.empty())
      throw EmptyDexterousSet("no dexterous points", scored.score_min, scored.score_max,
                              scored.threshold);
    c.dexterous = estimate_workspace(dex, pipeline.partition, pipeline.partition.fit_order_dex);
    strip_columns(c.dexterous);
    c.dexterous_ok = true;
  } catch (const Error& e) {
    c.dexterous_ok = false;
    c.failure = e.what();
  }
  return c;
}

std::size_t select(const std::vector<Candidate>& candidates, const Selection& rule) {
  if (candidates.empty()) throw NoCandidate("no candidates to select from", 0.0);
  if (candidates.size() == 1) return 0;

  std::size_t best = candidates.size();
  double best_radius = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    if (!c.feasible) continue;
    best_radius = std::max(best_radius, c.r_ed());

    if (rule.rule == SelectionRule::MaxDexVolume) {
      if (best == candidates.size() || tie_break_prefers(c, candidates[best])) best = i;
      continue;
    }

    if (!c.dexterous_ok || c.r_ed() < rule.r_floor) continue;
    if (best == candidates.size()) {
      best = i;
      continue;
    }
    const Candidate& b = candidates[best];
    if (nm(c.xi.total()) != nm(b.xi.total())) {
      if (nm(c.xi.total()) < nm(b.xi.total())) best = i;
    } else if (tie_break_prefers(c, b)) {
      best = i;
    }
  }

  if (best == candidates.size()) {
    std::ostringstream msg;
    if (rule.rule == SelectionRule::MaxDexVolume) {
      msg << "no feasible candidate";
    } else {
      msg << "no candidate reaches R_ed >= " << rule.r_floor * 1e3 << " mm; best achieved "
          << best_radius * 1e3 << " mm";
    }
    throw NoCandidate(msg.str(), best_radius);
  }
  return best;
}

ExplorationResult explore(const ExplorationConfig& cfg, const PipelineConfig& pipeline,
                          std::uint64_t seed, std::size_t threads) {
  const std::vector<LinkLengths> grid = enumerate_grid(cfg);
  PipelineConfig per_candidate = pipeline;
  per_candidate.sampler.n_samples = cfg.samples_per_candidate;

  ExplorationResult result;
  result.selection = cfg.selection;
  result.mode = cfg.mode;
  result.seed = seed;
  result.candidates.resize(grid.size());
  parallel_for(
      grid.size(),
      [&](std::size_t i) {
        result.candidates[i] = evaluate(grid[i], per_candidate, seed, cfg.total_max, 1);
      },
      threads == 0 ? default_thread_count() : threads);

  result.best_index = select(result.candidates, cfg.selection);
  for (const Candidate& c : result.candidates)
    if (c.feasible) result.v_max = std::max(result.v_max, c.v_dex());
  return result;
}

}  // namespace dexws
