#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <span>
#include <vector>

namespace dexws {

using TipPosition = Eigen::Vector3d;
using PositionalJacobian = Eigen::Matrix<double, 3, Eigen::Dynamic>;

enum class JointKind { Prismatic, Revolute };

/// One row of a standard Denavit-Hartenberg table.
///
/// The link transform is Rz(theta) * Tz(d) * Tx(a) * Rx(alpha) with
/// theta = theta_offset + q for revolute joints and d = d_offset + q for
/// prismatic joints. Limits are in metres (prismatic) or radians (revolute).
struct DHRow {
  double a = 0.0;
  double alpha = 0.0;
  double d_offset = 0.0;
  double theta_offset = 0.0;
  JointKind kind = JointKind::Revolute;
  double q_min = 0.0;
  double q_max = 0.0;

  double range() const { return q_max - q_min; }
  bool contains(double q) const { return q >= q_min && q <= q_max; }
};

/// Link-length design vector [a1, a3, a5] of the PRRRR instrument, in metres.
struct LinkLengths {
  double a1 = 0.0;
  double a3 = 0.0;
  double a5 = 0.0;

  double total() const { return a1 + a3 + a5; }
  friend bool operator==(const LinkLengths&, const LinkLengths&) = default;
};

/// Lower bounds on the PRRRR link lengths (metres).
struct LinkBounds {
  static constexpr double kMinA1 = 0.003;
  static constexpr double kMinA3 = 0.003;
  static constexpr double kMinA5 = 0.010;
  static constexpr double kMaxTotal = 0.045;
  // Absorbs lattice round-off such as 0.003 + 5 * 0.001.
  static constexpr double kTolerance = 1e-12;
};

/// Throws ConstraintViolation naming the first violated lower bound.
void check_link_lower_bounds(const LinkLengths& xi);

/// True when every bound (lower bounds and total <= total_max) holds.
bool satisfies_link_constraints(const LinkLengths& xi,
                                double total_max = LinkBounds::kMaxTotal);

enum class LimitCheck { Enforce, Waive };

class DHChain {
 public:
  explicit DHChain(std::vector<DHRow> rows,
                   Eigen::Isometry3d base = Eigen::Isometry3d::Identity());

  std::size_t dof() const { return rows_.size(); }
  const std::vector<DHRow>& rows() const { return rows_; }
  const DHRow& row(std::size_t i) const { return rows_.at(i); }
  const Eigen::Isometry3d& base() const { return base_; }

  /// Sum of |a| and |d_offset| over all rows: the rigid length of the chain.
  double rigid_length() const;

  /// Throws DimensionMismatch on a wrong-sized q and ConstraintViolation on
  /// an out-of-limit joint value.
  void validate(std::span<const double> q,
                LimitCheck check = LimitCheck::Enforce) const;

 private:
  std::vector<DHRow> rows_;
  Eigen::Isometry3d base_;
};

/// Homogeneous transform of one DH row at joint value q.
Eigen::Isometry3d dh_transform(const DHRow& row, double q);

/// The miniaturised PRRRR instrument: one prismatic joint with a 10 mm
/// stroke followed by two 2-DOF revolute wrists, all revolute ranges
/// [-45 deg, 45 deg]. a1 rides on the prismatic axis, a2 = a4 = 0.
DHChain build_prrrr_chain(const LinkLengths& xi);

/// Pose of the last frame.
Eigen::Isometry3d forward_pose(const DHChain& chain, std::span<const double> q,
                               LimitCheck check = LimitCheck::Enforce);

TipPosition forward_kinematics(const DHChain& chain, std::span<const double> q,
                               LimitCheck check = LimitCheck::Enforce);

/// Geometric positional Jacobian (3 x dof). Revolute column i is
/// z_{i-1} x (p_e - p_{i-1}); prismatic column i is z_{i-1}.
PositionalJacobian positional_jacobian(const DHChain& chain,
                                       std::span<const double> q,
                                       LimitCheck check = LimitCheck::Enforce);

/// Tip position and Jacobian from a single pass over the chain.
void tip_and_jacobian(const DHChain& chain, std::span<const double> q,
                      TipPosition& tip, PositionalJacobian& jacobian,
                      LimitCheck check = LimitCheck::Enforce);

double deg_to_rad(double deg);

}  // namespace dexws
