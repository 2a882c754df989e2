#pragma once

#include <Eigen/Dense>
#include <vector>

namespace raceline::geometry {

/// Interpolating cubic spline for R^3-valued data on a shared knot grid.
///
/// Periodic splines close smoothly across the seam: the final segment runs
/// from the last knot back to the first waypoint at s = span(). Open splines
/// use natural end conditions and extrapolate their end segments when
/// evaluated outside the knot range.
class CubicSpline3 {
 public:
  enum class Boundary { periodic, natural };

  CubicSpline3() = default;

  /// knots must be strictly increasing and the same length as values.
  /// For periodic boundaries `span` is the total parameter length (the wrap
  /// segment covers [knots.back(), knots.front() + span]); for natural
  /// boundaries it is ignored and the span is knots.back() - knots.front().
  CubicSpline3(std::vector<double> knots,
               std::vector<Eigen::Vector3d> values,
               Boundary boundary,
               double span = 0.0);

  Eigen::Vector3d value(double s) const;
  Eigen::Vector3d derivative(double s) const;
  Eigen::Vector3d second_derivative(double s) const;

  Boundary boundary() const { return boundary_; }
  double span() const { return span_; }
  double start() const { return knots_.front(); }
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<Eigen::Vector3d>& waypoints() const { return values_; }

  /// Maps s into [start, start + span) for periodic splines; identity for
  /// natural ones.
  double wrap(double s) const;

 private:
  int segment_index(double s, double& local) const;

  std::vector<double> knots_;
  std::vector<Eigen::Vector3d> values_;
  std::vector<Eigen::Vector3d> second_derivs_;  // M_i at each knot
  Boundary boundary_ = Boundary::natural;
  double span_ = 0.0;
};

}  // namespace raceline::geometry
