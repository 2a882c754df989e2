#pragma once

// Analytic curve constructions shared by the geometry tests and the
// acceptance suite.

#include <cmath>

#include "geometry.hpp"

namespace curves {

using raceline::geometry::GeometryConfig;
using raceline::geometry::ParametricCurve;

/// Planar circle with radially outward reference. If arc_length is set the
/// parameter runs over [0, 2 pi R), otherwise s is the angle.
inline ParametricCurve circle(double radius, bool arc_length = false,
                              GeometryConfig cfg = {}) {
  const double w = arc_length ? 1.0 / radius : 1.0;
  const double period = 2.0 * M_PI / w;
  return ParametricCurve::from_functions(
      [=](double s) {
        return Eigen::Vector3d(radius * std::cos(w * s), radius * std::sin(w * s), 0.0);
      },
      [=](double s) {
        return Eigen::Vector3d(-radius * w * std::sin(w * s), radius * w * std::cos(w * s),
                               0.0);
      },
      [=](double s) {
        return Eigen::Vector3d(-radius * w * w * std::cos(w * s),
                               -radius * w * w * std::sin(w * s), 0.0);
      },
      [=](double s) { return Eigen::Vector3d(std::cos(w * s), std::sin(w * s), 0.0); },
      [=](double s) {
        return Eigen::Vector3d(-w * std::sin(w * s), w * std::cos(w * s), 0.0);
      },
      period, true, cfg);
}

/// Straight line along +x with reference +y; open and unbounded.
inline ParametricCurve line(double length = 100.0, GeometryConfig cfg = {}) {
  return ParametricCurve::from_functions(
      [](double s) { return Eigen::Vector3d(s, 0.0, 0.0); },
      [](double) { return Eigen::Vector3d(1.0, 0.0, 0.0); },
      [](double) { return Eigen::Vector3d(0.0, 0.0, 0.0); },
      [](double) { return Eigen::Vector3d(0.0, 1.0, 0.0); },
      [](double) { return Eigen::Vector3d(0.0, 0.0, 0.0); }, length, false, cfg);
}

/// Helix x = (cos s, sin s, pitch s) with radial reference; twists the frame.
inline ParametricCurve helix(double pitch = 0.5, GeometryConfig cfg = {}) {
  return ParametricCurve::from_functions(
      [=](double s) { return Eigen::Vector3d(std::cos(s), std::sin(s), pitch * s); },
      [=](double s) { return Eigen::Vector3d(-std::sin(s), std::cos(s), pitch); },
      [=](double s) { return Eigen::Vector3d(-std::cos(s), -std::sin(s), 0.0); },
      [](double s) { return Eigen::Vector3d(std::cos(s), std::sin(s), 0.0); },
      [](double s) { return Eigen::Vector3d(-std::sin(s), std::cos(s), 0.0); },
      20.0 * M_PI, false, cfg);
}

}  // namespace curves
