#include "dexws/geometry.hpp"
#include "dexws/optimizer.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace dexws;

namespace {

const LinkLengths kXi{0.003, 0.008, 0.034};

std::vector<std::vector<double>> random_states(const DHChain& chain, std::size_t n) {
  std::mt19937_64 gen(1);
  std::vector<std::vector<double>> out(n, std::vector<double>(chain.dof()));
  for (auto& q : out)
    for (std::size_t i = 0; i < q.size(); ++i)
      q[i] = std::uniform_real_distribution<double>(chain.row(i).q_min, chain.row(i).q_max)(gen);
  return out;
}

void BM_ForwardKinematics(benchmark::State& state) {
  const DHChain chain = build_prrrr_chain(kXi);
  const auto qs = random_states(chain, 1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_kinematics(chain, qs[i++ & 1023]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ForwardKinematics);

void BM_TipAndJacobian(benchmark::State& state) {
  const DHChain chain = build_prrrr_chain(kXi);
  const auto qs = random_states(chain, 1024);
  TipPosition tip;
  PositionalJacobian j;
  std::size_t i = 0;
  for (auto _ : state) {
    tip_and_jacobian(chain, qs[i++ & 1023], tip, j);
    benchmark::DoNotOptimize(j.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TipAndJacobian);

void BM_Manipulability(benchmark::State& state) {
  const DHChain chain = build_prrrr_chain(kXi);
  const PositionalJacobian j = positional_jacobian(chain, random_states(chain, 1)[0]);
  for (auto _ : state) benchmark::DoNotOptimize(manipulability(j.rightCols(4)));
}
BENCHMARK(BM_Manipulability);

void BM_BetaVariate(benchmark::State& state) {
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(rng.beta(0.4, 0.4));
}
BENCHMARK(BM_BetaVariate);

void BM_SampleWorkspace(benchmark::State& state) {
  SamplerConfig cfg;
  cfg.n_samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_workspace(kXi, cfg, 1).points.data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleWorkspace)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_ScoreCloud(benchmark::State& state) {
  SamplerConfig cfg;
  cfg.n_samples = static_cast<std::size_t>(state.range(0));
  const DHChain chain = build_prrrr_chain(kXi);
  const PointCloud cloud = sample_workspace(chain, cfg, kXi, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(score_cloud(chain, cloud, DexterityConfig{}, 1).dexterous_count);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScoreCloud)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_Analyze(benchmark::State& state) {
  SamplerConfig cfg;
  cfg.n_samples = static_cast<std::size_t>(state.range(0));
  const DHChain chain = build_prrrr_chain(kXi);
  const ScoredCloud scored = score_cloud(chain, sample_workspace(chain, cfg, kXi, 1), DexterityConfig{}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(scored, PartitionConfig{}).dexterous.volume);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Analyze)->Arg(100'000)->Arg(500'000)->Unit(benchmark::kMillisecond);

void BM_FitOrder7(benchmark::State& state) {
  std::vector<double> x(40), y(40);
  for (int i = 0; i < 40; ++i) {
    x[i] = -0.04 + 0.002 * i;
    y[i] = std::sqrt(0.0016 - x[i] * x[i] * 0.99);
  }
  for (auto _ : state) benchmark::DoNotOptimize(fit_polynomial(x, y, 7).coeffs.data());
}
BENCHMARK(BM_FitOrder7);

void BM_EvaluateCandidate(benchmark::State& state) {
  PipelineConfig p;
  p.sampler.n_samples = 100'000;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(kXi, p, 1, LinkBounds::kMaxTotal, 1).v_dex());
}
BENCHMARK(BM_EvaluateCandidate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
