#include "dexws/dexterity.hpp"

#include "dexws/error.hpp"
#include "dexws/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dexws {

void DexterityConfig::validate() const {
  if (m_task < 1 || m_task > 3) throw ConfigError("dexterity.m_task must be in [1, 3]");
  if (!(m_ref >= 0.0 && m_ref <= 1.0)) throw ConfigError("dexterity.m_ref must be in [0, 1]");
}

double manipulability(const Eigen::Ref<const Eigen::MatrixXd>& jacobian, int m_task) {
  if (m_task < 1 || m_task > jacobian.rows())
    throw DimensionMismatch("task dimension exceeds Jacobian rows");
  if (!jacobian.allFinite()) throw NumericalError("Jacobian has non-finite entries");
  const auto top = jacobian.topRows(m_task);
  const Eigen::MatrixXd jjt = top * top.transpose();
  double det = jjt.determinant();
  if (det < -1e-12) {
    std::ostringstream msg;
    msg << "det(J J^T) = " << det << " is negative beyond round-off";
    throw NumericalError(msg.str());
  }
  det = std::max(det, 0.0);
  return std::pow(det, 1.0 / m_task);
}

double relative_manipulability(double m, double length_scale) {
  if (!(length_scale > 0.0)) throw ConfigError("total link length must be positive");
  return m / length_scale;
}

double relative_manipulability(double m, const LinkLengths& xi) {
  return relative_manipulability(m, xi.total());
}

double dexterity_threshold(double score_min, double score_max, double m_ref) {
  return score_min + m_ref * (score_max - score_min);
}

Classification classify(const std::vector<double>& scores, double m_ref) {
  Classification c;
  c.dexterous.assign(scores.size(), 0);
  if (scores.empty()) return c;
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  c.score_min = *lo;
  c.score_max = *hi;
  c.threshold = dexterity_threshold(c.score_min, c.score_max, m_ref);
  // Guard the top end: min + 1 * (max - min) can round below max.
  if (m_ref >= 1.0) c.threshold = c.score_max;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool keep = c.score_max == c.score_min || scores[i] >= c.threshold;
    c.dexterous[i] = keep ? 1 : 0;
    c.dexterous_count += keep ? 1 : 0;
  }
  return c;
}

std::vector<TipPosition> ScoredCloud::dexterous_points() const {
  std::vector<TipPosition> out;
  out.reserve(dexterous_count);
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (dexterous[i]) out.push_back(cloud.points[i]);
  return out;
}

ScoredCloud score_cloud(const DHChain& chain, PointCloud cloud, const DexterityConfig& cfg,
                        std::size_t threads) {
  cfg.validate();
  if (cloud.size() == 0) throw ConfigError("cannot score an empty point cloud");
  if (static_cast<std::size_t>(cloud.joint_states.cols()) != chain.dof())
    throw DimensionMismatch("cloud joint states do not match the chain");

  const double length_scale =
      cloud.link_lengths ? cloud.link_lengths->total() : chain.rigid_length();

  std::vector<Eigen::Index> columns;
  for (std::size_t j = 0; j < chain.dof(); ++j)
    if (cfg.include_prismatic || chain.row(j).kind == JointKind::Revolute)
      columns.push_back(static_cast<Eigen::Index>(j));
  if (columns.empty())
    for (std::size_t j = 0; j < chain.dof(); ++j) columns.push_back(static_cast<Eigen::Index>(j));

  ScoredCloud scored;
  scored.scores.resize(cloud.size());
  const std::size_t n = cloud.size();
  const std::size_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
  parallel_for(
      blocks,
      [&](std::size_t b) {
        TipPosition tip;
        PositionalJacobian full;
        Eigen::MatrixXd used(3, static_cast<Eigen::Index>(columns.size()));
        const std::size_t end = std::min(n, (b + 1) * kSampleBlock);
        for (std::size_t i = b * kSampleBlock; i < end; ++i) {
          tip_and_jacobian(chain, cloud.joint_state(i), tip, full, LimitCheck::Waive);
          for (std::size_t c = 0; c < columns.size(); ++c)
            used.col(static_cast<Eigen::Index>(c)) = full.col(columns[c]);
          scored.scores[i] =
              relative_manipulability(manipulability(used, cfg.m_task), length_scale);
        }
      },
      threads == 0 ? default_thread_count() : threads);

  Classification c = classify(scored.scores, cfg.m_ref);
  scored.score_min = c.score_min;
  scored.score_max = c.score_max;
  scored.threshold = c.threshold;
  scored.dexterous = std::move(c.dexterous);
  scored.dexterous_count = c.dexterous_count;
  scored.cloud = std::move(cloud);
  return scored;
}

}  // namespace dexws
