#pragma once

#include "dexws/dexterity.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace dexws {

enum class Axis { X = 0, Y = 1, Z = 2 };

/// Axes of the 2D section once the slicing axis is fixed: columns run along
/// `column`, boundaries are extrema along `height`.
struct SectionAxes {
  Axis column;
  Axis height;
};

/// Y -> (X, Z), X -> (Y, Z), Z -> (X, Y).
SectionAxes section_axes(Axis slice_axis);

struct PartitionConfig {
  std::size_t s_n = 40;
  std::size_t s_m = 40;
  int fit_order_reach = 7;
  int fit_order_dex = 6;
  std::size_t min_points_per_column = 1;
  Axis slice_axis = Axis::Y;

  void validate() const;
};

/// Polynomial coefficients in ascending order: c[0] + c[1] x + ... + c[s] x^s.
using Coefficients = Eigen::VectorXd;

double poly_eval(const Coefficients& c, double x);
/// Exact integral of the polynomial over [a, b] from its antiderivative.
double poly_integral(const Coefficients& c, double a, double b);

/// c[0] + c[1] t + ... + c[s] t^s in the local variable
/// t = (x - center) / half_width. Fits keep this form: expanded in powers of
/// x the coefficients grow like half_width^-s and lose precision away from
/// x = 0.
struct Polynomial {
  Coefficients coeffs;
  double center = 0.0;
  double half_width = 1.0;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  double operator()(double x) const;
  double integral(double a, double b) const;
  /// The same polynomial in ascending powers of x.
  Coefficients monomial() const;
};

/// Least-squares polynomial of the given order. The abscissae are mapped
/// affinely onto [-1, 1] and the system is solved with a column-pivoting
/// Householder QR.
Polynomial fit_polynomial(std::span<const double> x, std::span<const double> y, int order);

struct SlicePartition {
  std::vector<std::vector<std::size_t>> buckets;
  double lower = 0.0;
  double upper = 0.0;
  double width = 0.0;  ///< (upper - lower) / s_n
};

/// Uniform bins along `axis`; the last bin includes the upper edge.
/// Throws DegenerateExtent for fewer than two points or zero extent.
SlicePartition partition_slices(std::span<const TipPosition> points, std::size_t s_n,
                                Axis axis = Axis::Y);

/// A point of one slice projected onto its section plane.
struct SectionPoint {
  double x;
  double z;
};

struct ColumnExtrema {
  double x_center;
  double z_max;
  double z_min;
  std::size_t count;
};

/// Splits the section's x extent into s_m uniform columns and keeps the
/// highest and lowest point of every column holding at least `min_points`
/// points. Columns are returned in ascending x.
std::vector<ColumnExtrema> column_extrema(std::span<const SectionPoint> section, std::size_t s_m,
                                          std::size_t min_points = 1);

struct BoundaryFit {
  Polynomial upper;
  Polynomial lower;
};

/// Fits u(x) to the column maxima and l(x) to the column minima. Throws
/// Underdetermined when there are fewer than order + 1 columns.
BoundaryFit fit_boundary(std::span<const ColumnExtrema> columns, int order);

struct SliceBoundary {
  std::size_t slice_index = 0;
  double y_center = 0.0;
  std::vector<ColumnExtrema> columns;
  Polynomial upper;
  Polynomial lower;
  int fit_order = 0;  ///< 0 when the slice was too sparse to fit
  double x_min = 0.0;
  double x_max = 0.0;
  double area = 0.0;
  bool crossing = false;  ///< u - l changes sign inside [x_min, x_max]
  bool clamped = false;   ///< negative lobes were dropped from the area
};

struct SliceArea {
  double area = 0.0;
  bool crossing = false;
  bool clamped = false;
};

/// Integral of u - l over [x_min, x_max]. When the signed integral is
/// negative only the lobes where u > l are kept.
SliceArea slice_area(const SliceBoundary& boundary);

/// 2 * sum_j dp_{j-1} / j * x_max^j, valid for a slice symmetric about x = 0.
double symmetric_slice_area(const Coefficients& upper, const Coefficients& lower, double x_max);

/// slice_width * sum(areas), with compensated summation.
double volume(std::span<const double> areas, double slice_width);
double volume(std::span<const SliceBoundary> slices, double slice_width);

/// Radius of the sphere of equal volume.
double equivalent_radius(double volume);

struct WorkspaceReport {
  double volume = 0.0;
  double equivalent_radius = 0.0;
  double slice_width = 0.0;
  double slice_lower = 0.0;
  double slice_upper = 0.0;
  int fit_order = 0;
  std::size_t point_count = 0;
  std::size_t crossing_slices = 0;
  std::size_t clamped_slices = 0;
  std::size_t skipped_slices = 0;
  PartitionConfig config;
  std::vector<SliceBoundary> slices;
};

/// partition -> column extrema -> boundary fit -> area -> volume.
/// Slices with fewer than order + 1 columns use the largest determined
/// order; slices that cannot support order 1 contribute no area.
WorkspaceReport estimate_workspace(std::span<const TipPosition> points,
                                   const PartitionConfig& cfg, int order);

struct WorkspaceAnalysis {
  WorkspaceReport reachable;
  WorkspaceReport dexterous;
};

/// Reachable report on every point (fit_order_reach) and dexterous report on
/// the masked points (fit_order_dex). Throws EmptyDexterousSet.
WorkspaceAnalysis analyze(const ScoredCloud& scored, const PartitionConfig& cfg);

}  // namespace dexws
