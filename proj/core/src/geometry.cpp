#include "dexws/geometry.hpp"

#include "dexws/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace dexws {

namespace {

double component(const TipPosition& p, Axis axis) { return p[static_cast<int>(axis)]; }

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      compensation_ += (sum_ - t) + v;
    else
      compensation_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

Coefficients difference(const Coefficients& upper, const Coefficients& lower) {
  const Eigen::Index n = std::max(upper.size(), lower.size());
  Coefficients d = Coefficients::Zero(n);
  d.head(upper.size()) += upper;
  d.head(lower.size()) -= lower;
  return d;
}

// Sign changes of p on (a, b), located by a uniform scan then bisection.
std::vector<double> interior_roots(const Coefficients& p, double a, double b) {
  constexpr int kScan = 1024;
  std::vector<double> roots;
  double x_prev = a;
  double f_prev = poly_eval(p, a);
  for (int k = 1; k <= kScan; ++k) {
    const double x = a + (b - a) * k / kScan;
    const double f = poly_eval(p, x);
    if ((f_prev < 0.0 && f > 0.0) || (f_prev > 0.0 && f < 0.0)) {
      double lo = x_prev, hi = x, f_lo = f_prev;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = poly_eval(p, mid);
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    f_prev = f;
  }
  return roots;
}

}  // namespace

SectionAxes section_axes(Axis slice_axis) {
  switch (slice_axis) {
    case Axis::X: return {Axis::Y, Axis::Z};
    case Axis::Y: return {Axis::X, Axis::Z};
    case Axis::Z: return {Axis::X, Axis::Y};
  }
  return {Axis::X, Axis::Z};
}

void PartitionConfig::validate() const {
  if (s_n < 1) throw ConfigError("partition.s_n must be >= 1");
  if (s_m < 2) throw ConfigError("partition.s_m must be >= 2");
  if (fit_order_reach < 1) throw ConfigError("partition.fit_order_reach must be >= 1");
  if (fit_order_dex < 1) throw ConfigError("partition.fit_order_dex must be >= 1");
  if (min_points_per_column < 1) throw ConfigError("partition.min_points_per_column must be >= 1");
}

double poly_eval(const Coefficients& c, double x) {
  double acc = 0.0;
  for (Eigen::Index k = c.size() - 1; k >= 0; --k) acc = acc * x + c[k];
  return acc;
}

double poly_integral(const Coefficients& c, double a, double b) {
  // F(x) = sum_k c_k x^(k+1) / (k+1), evaluated by Horner.
  auto antiderivative = [&](double x) {
    double acc = 0.0;
    for (Eigen::Index k = c.size() - 1; k >= 0; --k)
      acc = acc * x + c[k] / static_cast<double>(k + 1);
    return acc * x;
  };
  return antiderivative(b) - antiderivative(a);
}

double Polynomial::operator()(double x) const { return poly_eval(coeffs, (x - center) / half_width); }

double Polynomial::integral(double a, double b) const {
  return half_width * poly_integral(coeffs, (a - center) / half_width, (b - center) / half_width);
}

Coefficients Polynomial::monomial() const {
  // sum_k c_k ((x - m) / h)^k expanded in powers of x.
  const Eigen::Index terms = coeffs.size();
  Coefficients out = Coefficients::Zero(terms);
  for (Eigen::Index k = 0; k < terms; ++k) {
    const double ck = coeffs[k] / std::pow(half_width, static_cast<double>(k));
    double binom = 1.0;  // C(k, i)
    for (Eigen::Index i = 0; i <= k; ++i) {
      out[i] += ck * binom * std::pow(-center, static_cast<double>(k - i));
      binom = binom * static_cast<double>(k - i) / static_cast<double>(i + 1);
    }
  }
  return out;
}

Polynomial fit_polynomial(std::span<const double> x, std::span<const double> y, int order) {
  if (order < 0) throw ConfigError("polynomial order must be >= 0");
  if (x.size() != y.size()) throw DimensionMismatch("fit abscissae and ordinates differ in length");
  const auto n = static_cast<Eigen::Index>(x.size());
  const Eigen::Index terms = order + 1;
  if (n < terms) {
    std::ostringstream msg;
    msg << "order " << order << " fit needs " << terms << " points, got " << n;
    throw Underdetermined(msg.str());
  }

  Polynomial out;
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  out.center = 0.5 * (*lo_it + *hi_it);
  out.half_width = 0.5 * (*hi_it - *lo_it);
  if (!(out.half_width > 0.0)) {
    if (order > 0) throw Underdetermined("all abscissae coincide");
    out.half_width = 1.0;
  }

  Eigen::MatrixXd vandermonde(n, terms);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = (x[static_cast<std::size_t>(i)] - out.center) / out.half_width;
    double power = 1.0;
    for (Eigen::Index k = 0; k < terms; ++k) {
      vandermonde(i, k) = power;
      power *= t;
    }
    rhs[i] = y[static_cast<std::size_t>(i)];
  }
  out.coeffs = vandermonde.colPivHouseholderQr().solve(rhs);
  return out;
}

SlicePartition partition_slices(std::span<const TipPosition> points, std::size_t s_n, Axis axis) {
  if (s_n < 1) throw ConfigError("slice count must be >= 1");
  if (points.size() < 2) throw DegenerateExtent("partitioning needs at least two points");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const TipPosition& p : points) {
    lo = std::min(lo, component(p, axis));
    hi = std::max(hi, component(p, axis));
  }
  if (!(hi > lo)) throw DegenerateExtent("points have zero extent along the slicing axis");

  SlicePartition part;
  part.lower = lo;
  part.upper = hi;
  part.width = (hi - lo) / static_cast<double>(s_n);
  part.buckets.resize(s_n);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double offset = (component(points[i], axis) - lo) / part.width;
    const auto bin = std::min(static_cast<std::size_t>(offset), s_n - 1);
    part.buckets[bin].push_back(i);
  }
  return part;
}

std::vector<ColumnExtrema> column_extrema(std::span<const SectionPoint> section, std::size_t s_m,
                                          std::size_t min_points) {
  if (s_m < 1) throw ConfigError("column count must be >= 1");
  if (section.empty()) return {};

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const SectionPoint& p : section) {
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }
  const double width = (hi - lo) / static_cast<double>(s_m);

  struct Acc {
    double z_max = -std::numeric_limits<double>::infinity();
    double z_min = std::numeric_limits<double>::infinity();
    std::size_t count = 0;
  };
  std::vector<Acc> acc(s_m);
  for (const SectionPoint& p : section) {
    std::size_t col = 0;
    if (width > 0.0) col = std::min(static_cast<std::size_t>((p.x - lo) / width), s_m - 1);
    Acc& a = acc[col];
    a.z_max = std::max(a.z_max, p.z);
    a.z_min = std::min(a.z_min, p.z);
    ++a.count;
  }

  std::vector<ColumnExtrema> out;
  for (std::size_t j = 0; j < s_m; ++j) {
    if (acc[j].count < min_points) continue;
    const double center = width > 0.0 ? lo + (static_cast<double>(j) + 0.5) * width : lo;
    out.push_back({center, acc[j].z_max, acc[j].z_min, acc[j].count});
  }
  return out;
}

BoundaryFit fit_boundary(std::span<const ColumnExtrema> columns, int order) {
  if (order < 0) throw ConfigError("fit order must be >= 0");
  if (columns.size() < static_cast<std::size_t>(order) + 1) {
    std::ostringstream msg;
    msg << "order " << order << " boundary fit needs " << order + 1 << " columns, got "
        << columns.size();
    throw Underdetermined(msg.str());
  }
  std::vector<double> x, upper, lower;
  x.reserve(columns.size());
  upper.reserve(columns.size());
  lower.reserve(columns.size());
  for (const ColumnExtrema& c : columns) {
    x.push_back(c.x_center);
    upper.push_back(c.z_max);
    lower.push_back(c.z_min);
  }
  return {fit_polynomial(x, upper, order), fit_polynomial(x, lower, order)};
}

SliceArea slice_area(const SliceBoundary& boundary) {
  SliceArea out;
  const Polynomial& u = boundary.upper;
  const Polynomial& l = boundary.lower;
  if (u.coeffs.size() == 0 || l.coeffs.size() == 0) return out;
  if (!(boundary.x_max > boundary.x_min)) return out;

  // Work in the fit's local variable; fall back to powers of x when the two
  // curves were fitted over different abscissae.
  Coefficients delta;
  double center = 0.0, half = 1.0;
  if (u.center == l.center && u.half_width == l.half_width) {
    delta = difference(u.coeffs, l.coeffs);
    center = u.center;
    half = u.half_width;
  } else {
    delta = difference(u.monomial(), l.monomial());
  }
  const double a = (boundary.x_min - center) / half;
  const double b = (boundary.x_max - center) / half;

  const std::vector<double> roots = interior_roots(delta, a, b);
  out.crossing = !roots.empty();

  const double signed_area = half * poly_integral(delta, a, b);
  if (signed_area >= 0.0) {
    out.area = signed_area;
    return out;
  }

  // Keep the lobes where u(x) > l(x).
  out.clamped = true;
  CompensatedSum positive;
  double left = a;
  for (std::size_t k = 0; k <= roots.size(); ++k) {
    const double right = k < roots.size() ? roots[k] : b;
    const double lobe = half * poly_integral(delta, left, right);
    if (lobe > 0.0) positive.add(lobe);
    left = right;
  }
  out.area = std::max(positive.value(), 0.0);
  return out;
}

double symmetric_slice_area(const Coefficients& upper, const Coefficients& lower, double x_max) {
  const Coefficients delta = difference(upper, lower);
  double sum = 0.0;
  for (Eigen::Index j = 1; j <= delta.size(); ++j)
    sum += delta[j - 1] / static_cast<double>(j) * std::pow(x_max, static_cast<double>(j));
  return 2.0 * sum;
}

double volume(std::span<const double> areas, double slice_width) {
  CompensatedSum sum;
  for (double a : areas) sum.add(a);
  return slice_width * sum.value();
}

double volume(std::span<const SliceBoundary> slices, double slice_width) {
  CompensatedSum sum;
  for (const SliceBoundary& s : slices) sum.add(s.area);
  return slice_width * sum.value();
}

double equivalent_radius(double volume) {
  if (volume < 0.0) throw ConfigError("volume must be non-negative");
  return std::cbrt(3.0 * volume / (4.0 * std::numbers::pi));
}

WorkspaceReport estimate_workspace(std::span<const TipPosition> points,
                                   const PartitionConfig& cfg, int order) {
  cfg.validate();
  if (order < 1) throw ConfigError("fit order must be >= 1");
  const SectionAxes plane = section_axes(cfg.slice_axis);
  const SlicePartition part = partition_slices(points, cfg.s_n, cfg.slice_axis);

  WorkspaceReport report;
  report.config = cfg;
  report.fit_order = order;
  report.point_count = points.size();
  report.slice_width = part.width;
  report.slice_lower = part.lower;
  report.slice_upper = part.upper;
  report.slices.reserve(cfg.s_n);

  std::vector<SectionPoint> section;
  for (std::size_t i = 0; i < cfg.s_n; ++i) {
    SliceBoundary slice;
    slice.slice_index = i;
    slice.y_center = part.lower + (static_cast<double>(i) + 0.5) * part.width;

    section.clear();
    for (std::size_t idx : part.buckets[i])
      section.push_back({component(points[idx], plane.column), component(points[idx], plane.height)});
    slice.columns = column_extrema(section, cfg.s_m, cfg.min_points_per_column);

    const int determined = static_cast<int>(slice.columns.size()) - 1;
    const int used = std::min(order, determined);
    if (used >= 1) {
      const BoundaryFit fit = fit_boundary(slice.columns, used);
      slice.upper = fit.upper;
      slice.lower = fit.lower;
      slice.fit_order = used;
      slice.x_min = slice.columns.front().x_center;
      slice.x_max = slice.columns.back().x_center;
      const SliceArea area = slice_area(slice);
      slice.area = area.area;
      slice.crossing = area.crossing;
      slice.clamped = area.clamped;
      report.crossing_slices += area.crossing ? 1 : 0;
      report.clamped_slices += area.clamped ? 1 : 0;
    } else {
      ++report.skipped_slices;
      if (!slice.columns.empty()) {
        slice.x_min = slice.columns.front().x_center;
        slice.x_max = slice.columns.back().x_center;
      }
    }
    report.slices.push_back(std::move(slice));
  }

  report.volume = volume(std::span<const SliceBoundary>(report.slices), part.width);
  report.equivalent_radius = equivalent_radius(report.volume);
  return report;
}

WorkspaceAnalysis analyze(const ScoredCloud& scored, const PartitionConfig& cfg) {
  if (scored.cloud.size() == 0) throw ConfigError("cannot analyse an empty cloud");
  WorkspaceAnalysis out;
  out.reachable = estimate_workspace(scored.cloud.points, cfg, cfg.fit_order_reach);

  const std::vector<TipPosition> dex = scored.dexterous_points();
  if (dex.empty()) {
    std::ostringstream msg;
    msg << "no dexterous points: scores in [" << scored.score_min << ", " << scored.score_max
        << "], threshold " << scored.threshold;
    throw EmptyDexterousSet(msg.str(), scored.score_min, scored.score_max, scored.threshold);
  }
  out.dexterous = estimate_workspace(dex, cfg, cfg.fit_order_dex);
  return out;
}

}  // namespace dexws
