#include "dexws/sampling.hpp"

#include "dexws/error.hpp"
#include "dexws/parallel.hpp"

#include <algorithm>

namespace dexws {

void SamplerConfig::validate() const {
  if (n_samples < 1) throw ConfigError("sampler.n_samples must be >= 1");
  if (!(beta_floor > 0.0)) throw ConfigError("sampler.beta_floor must be > 0");
  if (!(beta_scale >= 0.0)) throw ConfigError("sampler.beta_scale must be >= 0");
  if (!(prismatic_stroke_unit > 0.0))
    throw ConfigError("sampler.prismatic_stroke_unit must be > 0");
}

BetaShape beta_params(const DHRow& row, const SamplerConfig& cfg) {
  const double range =
      row.kind == JointKind::Prismatic ? row.range() / cfg.prismatic_stroke_unit : row.range();
  const double shape = range * cfg.beta_scale + cfg.beta_floor;
  return {shape, shape};
}

std::vector<double> draw_uniform(const DHRow& row, std::size_t n, Rng& rng) {
  std::vector<double> out(n);
  const double width = row.range();
  for (double& v : out) v = row.q_min + width * rng.uniform();
  return out;
}

std::vector<double> draw_beta(const DHRow& row, std::size_t n, const SamplerConfig& cfg,
                              Rng& rng) {
  const BetaShape shape = beta_params(row, cfg);
  std::vector<double> out(n);
  const double width = row.range();
  for (double& v : out) v = row.q_min + width * rng.beta(shape.alpha, shape.beta);
  return out;
}

PointCloud sample_workspace(const DHChain& chain, const SamplerConfig& cfg,
                            std::optional<LinkLengths> link_lengths, std::size_t threads) {
  cfg.validate();
  const std::size_t n = cfg.n_samples;
  const std::size_t dof = chain.dof();

  std::vector<BetaShape> shapes;
  for (const DHRow& row : chain.rows()) shapes.push_back(beta_params(row, cfg));

  PointCloud cloud;
  cloud.points.resize(n);
  cloud.joint_states.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dof));
  cloud.link_lengths = link_lengths;
  cloud.seed = cfg.seed;
  cloud.scheme = cfg.scheme;

  const std::size_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
  parallel_for(
      blocks,
      [&](std::size_t b) {
        Rng rng(derive_stream_seed(cfg.seed, b));
        const std::size_t end = std::min(n, (b + 1) * kSampleBlock);
        for (std::size_t i = b * kSampleBlock; i < end; ++i) {
          double* q = cloud.joint_states.data() + i * dof;
          for (std::size_t j = 0; j < dof; ++j) {
            const DHRow& row = chain.row(j);
            const double u = cfg.scheme == SamplingScheme::Beta
                                 ? rng.beta(shapes[j].alpha, shapes[j].beta)
                                 : rng.uniform();
            q[j] = std::clamp(row.q_min + row.range() * u, row.q_min, row.q_max);
          }
          cloud.points[i] = forward_kinematics(chain, {q, dof});
        }
      },
      threads == 0 ? default_thread_count() : threads);
  return cloud;
}

PointCloud sample_workspace(const LinkLengths& xi, const SamplerConfig& cfg,
                            std::size_t threads) {
  return sample_workspace(build_prrrr_chain(xi), cfg, xi, threads);
}

}  // namespace dexws
