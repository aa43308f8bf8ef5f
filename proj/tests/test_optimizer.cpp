#include "dexws/error.hpp"
#include "dexws/optimizer.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace dexws;

namespace {

long long mm(double v) { return std::llround(v * 1e3); }

Candidate synthetic(double a1, double a3, double a5, double v_dex, bool ok = true) {
  Candidate c;
  c.xi = {a1, a3, a5};
  c.feasible = satisfies_link_constraints(c.xi);
  c.dexterous_ok = ok;
  c.dexterous.volume = v_dex;
  c.dexterous.equivalent_radius = equivalent_radius(v_dex);
  return c;
}

PipelineConfig small_pipeline(std::size_t n) {
  PipelineConfig p;
  p.sampler.n_samples = n;
  return p;
}

}  // namespace

TEST(Grid, FullModeMatchesBruteForceCount) {
  ExplorationConfig cfg;
  cfg.mode = ExplorationMode::Full;
  const auto grid = enumerate_grid(cfg);

  std::set<std::tuple<long long, long long, long long>> expected;
  for (int a1 = 3; a1 <= 8; ++a1)
    for (int a3 = 3; a3 <= 12; ++a3)
      for (int a5 = 15; a5 <= 35; ++a5)
        if (a1 + a3 + a5 <= 45) expected.insert({a1, a3, a5});

  std::set<std::tuple<long long, long long, long long>> seen;
  for (const auto& xi : grid) {
    EXPECT_TRUE(seen.insert({mm(xi.a1), mm(xi.a3), mm(xi.a5)}).second) << "duplicate";
    EXPECT_TRUE(satisfies_link_constraints(xi));
  }
  EXPECT_EQ(grid.size(), expected.size());
  EXPECT_EQ(seen, expected);
  EXPECT_TRUE(seen.count({3, 8, 34}));
}

TEST(Grid, SimplifiedIsSaturatedAndInsideFull) {
  ExplorationConfig cfg;
  const auto simple = enumerate_grid(cfg);
  cfg.mode = ExplorationMode::Full;
  const auto full = enumerate_grid(cfg);
  std::set<std::tuple<long long, long long, long long>> full_set;
  for (const auto& xi : full) full_set.insert({mm(xi.a1), mm(xi.a3), mm(xi.a5)});

  bool saw_headline = false;
  for (const auto& xi : simple) {
    EXPECT_NEAR(xi.total(), 0.045, 1e-12);
    EXPECT_TRUE(full_set.count({mm(xi.a1), mm(xi.a3), mm(xi.a5)}));
    if (mm(xi.a1) == 3 && mm(xi.a3) == 8) {
      EXPECT_EQ(mm(xi.a5), 34);
      saw_headline = true;
    }
  }
  EXPECT_TRUE(saw_headline);
}

TEST(Grid, CoarseStepGivesCornerCandidate) {
  ExplorationConfig cfg;
  cfg.mode = ExplorationMode::Full;
  cfg.step = 0.1;
  const auto grid = enumerate_grid(cfg);
  ASSERT_EQ(grid.size(), 1u);
  EXPECT_EQ(grid[0], (LinkLengths{0.003, 0.003, 0.015}));
}

TEST(Grid, EmptyGridThrows) {
  ExplorationConfig cfg;
  cfg.total_max = 0.010;
  EXPECT_THROW(enumerate_grid(cfg), EmptyGrid);
  cfg.mode = ExplorationMode::Full;
  EXPECT_THROW(enumerate_grid(cfg), EmptyGrid);
}

TEST(Grid, LatticeIsExactOnTheNanometre) {
  const auto v = lattice({0.003, 0.008}, 0.001);
  ASSERT_EQ(v.size(), 6u);
  EXPECT_EQ(v.back(), 0.008);
}

TEST(ExplorationConfig, Validation) {
  ExplorationConfig cfg;
  cfg.step = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = ExplorationConfig{};
  cfg.range_a3 = {0.02, 0.01};
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Select, MaxDexVolumeIsOptimal) {
  std::vector<Candidate> cs{synthetic(0.003, 0.008, 0.034, 7e-5), synthetic(0.004, 0.008, 0.033, 8e-5),
                            synthetic(0.005, 0.008, 0.032, 6e-5)};
  const std::size_t best = select(cs, {});
  EXPECT_EQ(best, 1u);
  for (const auto& c : cs) EXPECT_LE(c.v_dex(), cs[best].v_dex());
}

TEST(Select, TieBreakChain) {
  // Equal V_dex: smaller total, then smaller a1, then smaller a3.
  std::vector<Candidate> cs{synthetic(0.004, 0.008, 0.020, 5e-5), synthetic(0.003, 0.009, 0.020, 5e-5),
                            synthetic(0.003, 0.008, 0.021, 5e-5), synthetic(0.005, 0.004, 0.020, 5e-5)};
  EXPECT_EQ(select(cs, {}), 3u);
  cs.pop_back();
  EXPECT_EQ(select(cs, {}), 2u);
}

TEST(Select, MinTotalWithRadiusFloor) {
  const Selection rule{SelectionRule::MinTotalLengthWithRadiusFloor, 0.017};
  std::vector<Candidate> cs{
      synthetic(0.003, 0.008, 0.034, 7.7e-5),
      synthetic(0.003, 0.003, 0.015, 1.0e-5),           // below floor
      synthetic(0.005, 0.008, 0.018, 2.1e-5),           // L = 31 mm
      synthetic(0.003, 0.003, 0.022, 2.2e-5),           // L = 28 mm
      synthetic(0.004, 0.003, 0.021, 2.3e-5),           // L = 28 mm, larger V_dex
      synthetic(0.003, 0.003, 0.020, 9.0e-5, false)};   // failed dexterous set
  const std::size_t best = select(cs, rule);
  EXPECT_EQ(best, 4u);
  EXPECT_GE(cs[best].r_ed(), 0.017);
}

TEST(Select, NoCandidateReportsBestRadius) {
  const Selection rule{SelectionRule::MinTotalLengthWithRadiusFloor, 0.050};
  std::vector<Candidate> cs{synthetic(0.003, 0.008, 0.034, 7.7e-5), synthetic(0.003, 0.003, 0.015, 1e-5)};
  try {
    select(cs, rule);
    FAIL() << "expected NoCandidate";
  } catch (const NoCandidate& e) {
    EXPECT_NEAR(e.best_radius, equivalent_radius(7.7e-5), 1e-15);
  }
}

TEST(Select, SingleCandidateReturnedUnconditionally) {
  const Selection rule{SelectionRule::MinTotalLengthWithRadiusFloor, 1.0};
  EXPECT_EQ(select({synthetic(0.003, 0.003, 0.015, 1e-9)}, rule), 0u);
  EXPECT_THROW(select({}, rule), NoCandidate);
}

TEST(Evaluate, DeterministicForASeed) {
  const LinkLengths xi{0.005, 0.008, 0.018};
  const auto p = small_pipeline(20'000);
  const Candidate a = evaluate(xi, p, 3);
  const Candidate b = evaluate(xi, p, 3);
  EXPECT_TRUE(a.feasible);
  EXPECT_TRUE(a.dexterous_ok);
  EXPECT_EQ(a.v_reach(), b.v_reach());
  EXPECT_EQ(a.v_dex(), b.v_dex());
  EXPECT_NE(evaluate(xi, p, 4).v_dex(), a.v_dex());
}

TEST(Evaluate, DexterousTrendInA1) {
  const auto p = small_pipeline(50'000);
  std::vector<double> a1s, fixed, saturated;
  for (int a1 = 3; a1 <= 8; ++a1) {
    a1s.push_back(a1);
    fixed.push_back(evaluate({a1 * 1e-3, 0.008, 0.034}, p, 1, 1.0).v_dex());
    saturated.push_back(evaluate({a1 * 1e-3, 0.008, (37 - a1) * 1e-3}, p, 1).v_dex());
  }
  // a1 only shifts the workspace along the prismatic axis, so with a3, a5
  // fixed V_dex must not grow from one a1 step to the next.
  for (std::size_t i = 1; i < fixed.size(); ++i) EXPECT_LE(fixed[i], fixed[i - 1] * 1.03) << i;
  EXPECT_LT(oracle::spearman(a1s, saturated), 0.0);
}

TEST(Explore, IndependentOfThreadCount) {
  ExplorationConfig cfg;
  cfg.range_a1 = {0.003, 0.004};
  cfg.range_a3 = {0.007, 0.009};
  cfg.samples_per_candidate = 5'000;
  const auto p = small_pipeline(1);
  const ExplorationResult one = explore(cfg, p, 9, 1);
  const ExplorationResult four = explore(cfg, p, 9, 4);
  ASSERT_EQ(one.candidates.size(), 6u);
  EXPECT_EQ(one.best_index, four.best_index);
  for (std::size_t i = 0; i < one.candidates.size(); ++i)
    EXPECT_EQ(one.candidates[i].v_dex(), four.candidates[i].v_dex());
  EXPECT_EQ(one.v_max, one.best().v_dex());
  EXPECT_EQ(one.candidates[0].reachable.point_count, 5'000u);
}
