#include "geometry.hpp"

#include <cmath>

#include "error.hpp"

namespace raceline::geometry {

namespace {

constexpr double kDegenerate = 1e-12;

class SplineBackend final : public ParametricCurve::Backend {
 public:
  SplineBackend(CubicSpline3 center, CubicSpline3 reference)
      : center_(std::move(center)), reference_(std::move(reference)) {}

  Eigen::Vector3d center(double s) const override { return center_.value(s); }
  Eigen::Vector3d center_d1(double s) const override { return center_.derivative(s); }
  Eigen::Vector3d center_d2(double s) const override { return center_.second_derivative(s); }
  Eigen::Vector3d reference(double s) const override { return reference_.value(s); }
  Eigen::Vector3d reference_d1(double s) const override { return reference_.derivative(s); }

 private:
  CubicSpline3 center_;
  CubicSpline3 reference_;
};

class FunctionBackend final : public ParametricCurve::Backend {
 public:
  FunctionBackend(ParametricCurve::Fn c, ParametricCurve::Fn c1, ParametricCurve::Fn c2,
                  ParametricCurve::Fn r, ParametricCurve::Fn r1)
      : c_(std::move(c)), c1_(std::move(c1)), c2_(std::move(c2)), r_(std::move(r)),
        r1_(std::move(r1)) {}

  Eigen::Vector3d center(double s) const override { return c_(s); }
  Eigen::Vector3d center_d1(double s) const override { return c1_(s); }
  Eigen::Vector3d center_d2(double s) const override { return c2_(s); }
  Eigen::Vector3d reference(double s) const override { return r_(s); }
  Eigen::Vector3d reference_d1(double s) const override { return r1_(s); }

 private:
  ParametricCurve::Fn c_, c1_, c2_, r_, r1_;
};

std::vector<double> make_knots(const std::vector<Eigen::Vector3d>& pts,
                               KnotSpacing spacing,
                               bool closed,
                               double& span) {
  const int n = static_cast<int>(pts.size());
  std::vector<double> knots(n);
  if (spacing == KnotSpacing::unit) {
    for (int i = 0; i < n; ++i) knots[i] = static_cast<double>(i);
    span = closed ? static_cast<double>(n) : static_cast<double>(n - 1);
  } else {
    knots[0] = 0.0;
    for (int i = 1; i < n; ++i) {
      const double d = (pts[i] - pts[i - 1]).norm();
      if (d <= kDegenerate) {
        throw Error(ErrorCode::invalid_argument, "coincident waypoints in chord spacing");
      }
      knots[i] = knots[i - 1] + d;
    }
    span = closed ? knots[n - 1] + (pts[0] - pts[n - 1]).norm() : knots[n - 1];
  }
  return knots;
}

ParametricCurve fit_curve(const std::vector<Eigen::Vector3d>& center_waypoints,
                          const std::vector<Eigen::Vector3d>& reference_waypoints,
                          KnotSpacing spacing,
                          GeometryConfig config,
                          bool closed) {
  if (center_waypoints.size() < 3) {
    throw Error(ErrorCode::invalid_argument, "insufficient waypoints: need at least 3");
  }
  if (reference_waypoints.size() != center_waypoints.size()) {
    throw Error(ErrorCode::invalid_argument,
                "reference waypoint count must match center waypoint count");
  }
  for (const auto& r : reference_waypoints) {
    if (r.norm() <= kDegenerate) {
      throw Error(ErrorCode::invalid_argument, "zero reference vector");
    }
  }
  if (!(config.lambda > 0.0 && config.lambda < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "lambda must lie in (0, 1)");
  }

  double span = 0.0;
  const std::vector<double> knots = make_knots(center_waypoints, spacing, closed, span);
  const auto boundary =
      closed ? CubicSpline3::Boundary::periodic : CubicSpline3::Boundary::natural;
  ParametricCurve curve(
      std::make_shared<SplineBackend>(CubicSpline3(knots, center_waypoints, boundary, span),
                                      CubicSpline3(knots, reference_waypoints, boundary, span)),
      span, closed, config);

  // Degeneracy sweep at knots and midpoints: nonvanishing tangent, reference
  // not parallel to it.
  const int n = static_cast<int>(knots.size());
  const int segments = closed ? n : n - 1;
  for (int i = 0; i < segments; ++i) {
    for (const double frac : {0.0, 0.5}) {
      const double s = knots[i] + frac * (i + 1 < n ? knots[i + 1] - knots[i]
                                                    : span - knots[n - 1]);
      const Eigen::Vector3d t = curve.center_derivative(s);
      const Eigen::Vector3d r = curve.reference(s);
      if (t.norm() <= kDegenerate) {
        throw Error(ErrorCode::geometry,
                    "degenerate centerline tangent near s=" + std::to_string(s));
      }
      if (t.cross(r).norm() <= 1e-9 * t.norm() * r.norm()) {
        throw Error(ErrorCode::geometry,
                    "reference parallel to tangent near s=" + std::to_string(s));
      }
    }
  }
  return curve;
}

}  // namespace

ParametricCurve::ParametricCurve(std::shared_ptr<const Backend> backend, double period,
                                 bool closed, GeometryConfig config)
    : backend_(std::move(backend)), period_(period), closed_(closed), config_(config) {}

ParametricCurve ParametricCurve::from_functions(Fn center, Fn center_d1, Fn center_d2,
                                                Fn reference, Fn reference_d1, double period,
                                                bool closed, GeometryConfig config) {
  return ParametricCurve(
      std::make_shared<FunctionBackend>(std::move(center), std::move(center_d1),
                                        std::move(center_d2), std::move(reference),
                                        std::move(reference_d1)),
      period, closed, config);
}

double ParametricCurve::wrap(double s) const {
  if (!closed_) return s;
  double u = std::fmod(s, period_);
  if (u < 0.0) u += period_;
  return u;
}

ParametricCurve fit_periodic_curve(const std::vector<Eigen::Vector3d>& center_waypoints,
                                   const std::vector<Eigen::Vector3d>& reference_waypoints,
                                   KnotSpacing spacing,
                                   GeometryConfig config) {
  return fit_curve(center_waypoints, reference_waypoints, spacing, config, true);
}

ParametricCurve fit_open_curve(const std::vector<Eigen::Vector3d>& center_waypoints,
                               const std::vector<Eigen::Vector3d>& reference_waypoints,
                               KnotSpacing spacing,
                               GeometryConfig config) {
  return fit_curve(center_waypoints, reference_waypoints, spacing, config, false);
}

FrameSample frame_at(const ParametricCurve& curve, double s) {
  const double sw = curve.wrap(s);
  const Eigen::Vector3d x_s = curve.center_derivative(sw);
  const Eigen::Vector3d x_ss = curve.center_second_derivative(sw);
  const Eigen::Vector3d r = curve.reference(sw);
  const Eigen::Vector3d r_s = curve.reference_derivative(sw);

  const double speed = x_s.norm();
  if (speed <= kDegenerate) {
    throw Error(ErrorCode::geometry, "pathological frame: vanishing tangent");
  }

  FrameSample f;
  f.s = sw;
  f.origin = curve.center(sw);
  f.speed_factor = speed;
  f.e_s = x_s / speed;
  const Eigen::Vector3d w = r - f.e_s * f.e_s.dot(r);
  const double wn = w.norm();
  if (wn <= kDegenerate * r.norm()) {
    throw Error(ErrorCode::geometry, "pathological frame: reference parallel to tangent");
  }
  f.e_y = w / wn;
  f.e_n = f.e_s.cross(f.e_y);

  // Curvatures about e_y and e_s come from the 2x2 orthogonality-rate system;
  // kappa_n from the tangent rate alone.
  Eigen::Matrix2d m;
  m << x_s.dot(f.e_s), x_s.dot(f.e_y), r.dot(f.e_s), r.dot(f.e_y);
  const double det = m.determinant();
  const double t = m.squaredNorm();
  const double disc = std::sqrt(std::max(0.0, t * t - 4.0 * det * det));
  const double smax2 = 0.5 * (t + disc);
  const double smin2 = 0.5 * (t - disc);
  if (!(smin2 > 0.0) || std::sqrt(smax2 / smin2) > curve.config().condition_limit) {
    throw Error(ErrorCode::geometry, "pathological frame: singular curvature system");
  }
  const Eigen::Vector2d rhs(x_ss.dot(f.e_n), r_s.dot(f.e_n));
  const Eigen::Vector2d ky_ks = m.inverse() * rhs / speed;
  f.kappa_y = ky_ks(0);
  f.kappa_s = ky_ks(1);
  f.kappa_n = -(x_ss.cross(x_s)).dot(f.e_n) / (speed * speed * speed);
  return f;
}

Eigen::Vector3d curvilinear_to_global(const ParametricCurve& curve,
                                      const CurvilinearState& state) {
  return curvilinear_to_global(curve, state.s, state.y, state.n);
}

Eigen::Vector3d curvilinear_to_global(const ParametricCurve& curve, double s, double y,
                                      double n) {
  const FrameSample f = frame_at(curve, s);
  return f.origin + y * f.e_y + n * f.e_n;
}

CurvilinearState global_to_curvilinear(const ParametricCurve& curve,
                                       const Eigen::Vector3d& x,
                                       double s_hint) {
  const GeometryConfig& cfg = curve.config();
  double s = curve.wrap(s_hint);
  double y = 0.0;
  double n = 0.0;
  bool converged = false;
  for (int it = 0; it < cfg.projection_max_iter; ++it) {
    const FrameSample f = frame_at(curve, s);
    const Eigen::Vector3d d = x - f.origin;
    const double g = d.dot(f.e_s);
    y = d.dot(f.e_y);
    n = d.dot(f.e_n);
    if (std::abs(g) <= cfg.projection_tolerance) {
      converged = true;
      break;
    }
    const double dg = f.speed_factor * (regularity_margin(f, y, n) - 1.0);
    if (std::abs(dg) <= kDegenerate) {
      throw Error(ErrorCode::geometry, "projection stalled at a singular frame");
    }
    double step = -g / dg;
    // Steps stay local so the hint picks the branch on self-crossing tracks.
    const double cap = std::max(1.0, curve.period() / 8.0);
    step = std::clamp(step, -cap, cap);
    s = curve.wrap(s + step);
  }
  if (!converged) {
    throw Error(ErrorCode::geometry, "projection did not converge");
  }
  const FrameSample f = frame_at(curve, s);
  if (regularity_margin(f, y, n) >= 1.0 - 1e-12) {
    throw Error(ErrorCode::geometry, "outside regular neighborhood");
  }
  CurvilinearState state;
  state.s = s;
  state.y = y;
  state.n = n;
  return state;
}

Eigen::Vector3d curvilinear_rates(const FrameSample& frame, double y, double n,
                                  const Eigen::Vector3d& v_frame) {
  const double denom = 1.0 - frame.kappa_y * n - frame.kappa_n * y;
  if (denom <= 0.0) {
    throw Error(ErrorCode::geometry, "kinematic singularity: regularity violated");
  }
  const double s_dot = v_frame.x() / (denom * frame.speed_factor);
  const double y_dot = v_frame.y() + n * frame.kappa_s * frame.speed_factor * s_dot;
  const double n_dot = v_frame.z() - y * frame.kappa_s * frame.speed_factor * s_dot;
  return {s_dot, y_dot, n_dot};
}

double regularity_margin(const FrameSample& frame, double y, double n) {
  return frame.kappa_y * n + frame.kappa_n * y;
}

Eigen::Vector3d frame_angular_velocity(const FrameSample& frame, double s_dot) {
  return Eigen::Vector3d(frame.kappa_s, -frame.kappa_y, frame.kappa_n) *
         frame.speed_factor * s_dot;
}

Eigen::Vector3d relative_angular_velocity(const Eigen::Vector3d& omega_body,
                                          const Eigen::Matrix3d& r_cb,
                                          const Eigen::Vector3d& eta_p) {
  return omega_body - r_cb.transpose() * eta_p;
}

}  // namespace raceline::geometry
