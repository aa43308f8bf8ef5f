#include "dexws/kinematics.hpp"

#include "dexws/error.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace dexws {

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

void check_link_lower_bounds(const LinkLengths& xi) {
  auto fail = [](const char* name, double value, double bound) {
    std::ostringstream msg;
    msg << "link length " << name << " = " << value * 1e3 << " mm violates the fabrication bound "
        << name << " >= " << bound * 1e3 << " mm";
    throw ConstraintViolation(msg.str());
  };
  if (!(xi.a1 >= LinkBounds::kMinA1 - LinkBounds::kTolerance)) fail("a1", xi.a1, LinkBounds::kMinA1);
  if (!(xi.a3 >= LinkBounds::kMinA3 - LinkBounds::kTolerance)) fail("a3", xi.a3, LinkBounds::kMinA3);
  if (!(xi.a5 >= LinkBounds::kMinA5 - LinkBounds::kTolerance)) fail("a5", xi.a5, LinkBounds::kMinA5);
}

bool satisfies_link_constraints(const LinkLengths& xi, double total_max) {
  return xi.a1 >= LinkBounds::kMinA1 - LinkBounds::kTolerance &&
         xi.a3 >= LinkBounds::kMinA3 - LinkBounds::kTolerance &&
         xi.a5 >= LinkBounds::kMinA5 - LinkBounds::kTolerance &&
         xi.total() <= total_max + LinkBounds::kTolerance;
}

DHChain::DHChain(std::vector<DHRow> rows, Eigen::Isometry3d base)
    : rows_(std::move(rows)), base_(base) {
  if (rows_.empty()) throw ConstraintViolation("a DH chain needs at least one row");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const DHRow& r = rows_[i];
    std::ostringstream where;
    where << "DH row " << i + 1 << ": ";
    if (!(r.q_min <= r.q_max))
      throw ConstraintViolation(where.str() + "q_min must not exceed q_max");
    if (!(r.a >= 0.0)) throw ConstraintViolation(where.str() + "link length a must be >= 0");
    if (!std::isfinite(r.alpha) || !std::isfinite(r.d_offset) || !std::isfinite(r.theta_offset))
      throw ConstraintViolation(where.str() + "non-finite DH parameter");
  }
}

double DHChain::rigid_length() const {
  double total = 0.0;
  for (const DHRow& r : rows_) total += std::abs(r.a) + std::abs(r.d_offset);
  return total;
}

void DHChain::validate(std::span<const double> q, LimitCheck check) const {
  if (q.size() != rows_.size()) {
    std::ostringstream msg;
    msg << "joint state has " << q.size() << " values, chain has " << rows_.size() << " joints";
    throw DimensionMismatch(msg.str());
  }
  if (check == LimitCheck::Waive) return;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!rows_[i].contains(q[i])) {
      std::ostringstream msg;
      msg << "joint " << i + 1 << " value " << q[i] << " outside [" << rows_[i].q_min << ", "
          << rows_[i].q_max << "]";
      throw ConstraintViolation(msg.str());
    }
  }
}

Eigen::Isometry3d dh_transform(const DHRow& row, double q) {
  const double theta = row.theta_offset + (row.kind == JointKind::Revolute ? q : 0.0);
  const double d = row.d_offset + (row.kind == JointKind::Prismatic ? q : 0.0);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double ca = std::cos(row.alpha), sa = std::sin(row.alpha);

  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  auto& m = t.matrix();
  m(0, 0) = ct;  m(0, 1) = -st * ca;  m(0, 2) = st * sa;   m(0, 3) = row.a * ct;
  m(1, 0) = st;  m(1, 1) = ct * ca;   m(1, 2) = -ct * sa;  m(1, 3) = row.a * st;
  m(2, 0) = 0.0; m(2, 1) = sa;        m(2, 2) = ca;        m(2, 3) = d;
  return t;
}

DHChain build_prrrr_chain(const LinkLengths& xi) {
  check_link_lower_bounds(xi);
  const double half_range = deg_to_rad(45.0);
  const double right = deg_to_rad(90.0);

  std::vector<DHRow> rows(5);
  rows[0] = {0.0, right, xi.a1, right, JointKind::Prismatic, 0.0, 0.010};
  rows[1] = {0.0, -right, 0.0, right, JointKind::Revolute, -half_range, half_range};
  rows[2] = {xi.a3, right, 0.0, 0.0, JointKind::Revolute, -half_range, half_range};
  rows[3] = {0.0, -right, 0.0, 0.0, JointKind::Revolute, -half_range, half_range};
  rows[4] = {xi.a5, 0.0, 0.0, 0.0, JointKind::Revolute, -half_range, half_range};
  return DHChain(std::move(rows));
}

Eigen::Isometry3d forward_pose(const DHChain& chain, std::span<const double> q,
                               LimitCheck check) {
  chain.validate(q, check);
  Eigen::Isometry3d t = chain.base();
  for (std::size_t i = 0; i < chain.dof(); ++i) t = t * dh_transform(chain.row(i), q[i]);
  return t;
}

TipPosition forward_kinematics(const DHChain& chain, std::span<const double> q,
                               LimitCheck check) {
  return forward_pose(chain, q, check).translation();
}

void tip_and_jacobian(const DHChain& chain, std::span<const double> q, TipPosition& tip,
                      PositionalJacobian& jacobian, LimitCheck check) {
  chain.validate(q, check);
  const auto n = static_cast<Eigen::Index>(chain.dof());
  jacobian.resize(3, n);
  Eigen::Matrix3Xd origins(3, n);

  // Joint i moves about/along z_{i-1}, located at p_{i-1}.
  Eigen::Isometry3d t = chain.base();
  for (Eigen::Index i = 0; i < n; ++i) {
    jacobian.col(i) = t.linear().col(2);
    origins.col(i) = t.translation();
    t = t * dh_transform(chain.row(static_cast<std::size_t>(i)), q[static_cast<std::size_t>(i)]);
  }
  tip = t.translation();

  for (Eigen::Index i = 0; i < n; ++i) {
    if (chain.row(static_cast<std::size_t>(i)).kind == JointKind::Revolute) {
      const Eigen::Vector3d z = jacobian.col(i);
      jacobian.col(i) = z.cross(tip - origins.col(i));
    }
  }
}

PositionalJacobian positional_jacobian(const DHChain& chain, std::span<const double> q,
                                       LimitCheck check) {
  TipPosition tip;
  PositionalJacobian jacobian;
  tip_and_jacobian(chain, q, tip, jacobian, check);
  return jacobian;
}

}  // namespace dexws
