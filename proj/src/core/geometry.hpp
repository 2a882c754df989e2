#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "spline.hpp"

namespace raceline::geometry {

struct GeometryConfig {
  double lambda = 0.9;                  // regularity bound, in (0, 1)
  double projection_tolerance = 1e-10;  // meters, for global -> curvilinear
  int projection_max_iter = 60;
  double condition_limit = 1e8;  // 2x2 curvature system conditioning cutoff
};

/// Moving-frame sample along the centerline at parameter s.
struct FrameSample {
  double s = 0.0;
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  Eigen::Vector3d e_s = Eigen::Vector3d::UnitX();
  Eigen::Vector3d e_y = Eigen::Vector3d::UnitY();
  Eigen::Vector3d e_n = Eigen::Vector3d::UnitZ();
  double kappa_s = 0.0;  // twist about e_s (1/m)
  double kappa_y = 0.0;  // curvature about e_y (1/m)
  double kappa_n = 0.0;  // curvature about e_n (1/m)
  double speed_factor = 1.0;  // |dx^c/ds| (m per unit s)

  Eigen::Matrix3d rotation() const {
    Eigen::Matrix3d r;
    r.col(0) = e_s;
    r.col(1) = e_y;
    r.col(2) = e_n;
    return r;
  }
};

struct CurvilinearState {
  double s = 0.0;
  double y = 0.0;
  double n = 0.0;
  std::optional<Eigen::Vector3d> rates;  // (s_dot, y_dot, n_dot)
};

enum class KnotSpacing {
  unit,   // s = k at waypoint k; period = waypoint count
  chord,  // s accumulates straight-line distance between waypoints
};

/// Centerline x^c(s) plus lateral reference direction r^c(s); the pair
/// induces the moving frame. Backed either by a periodic/natural spline fit
/// or by analytic functions (exact canonical shapes, test oracles).
class ParametricCurve {
 public:
  struct Backend {
    virtual ~Backend() = default;
    virtual Eigen::Vector3d center(double s) const = 0;
    virtual Eigen::Vector3d center_d1(double s) const = 0;
    virtual Eigen::Vector3d center_d2(double s) const = 0;
    virtual Eigen::Vector3d reference(double s) const = 0;
    virtual Eigen::Vector3d reference_d1(double s) const = 0;
  };

  using Fn = std::function<Eigen::Vector3d(double)>;

  ParametricCurve() = default;
  ParametricCurve(std::shared_ptr<const Backend> backend, double period, bool closed,
                  GeometryConfig config);

  static ParametricCurve from_functions(Fn center, Fn center_d1, Fn center_d2, Fn reference,
                                        Fn reference_d1, double period, bool closed,
                                        GeometryConfig config = {});

  Eigen::Vector3d center(double s) const { return backend_->center(wrap(s)); }
  Eigen::Vector3d center_derivative(double s) const { return backend_->center_d1(wrap(s)); }
  Eigen::Vector3d center_second_derivative(double s) const {
    return backend_->center_d2(wrap(s));
  }
  Eigen::Vector3d reference(double s) const { return backend_->reference(wrap(s)); }
  Eigen::Vector3d reference_derivative(double s) const {
    return backend_->reference_d1(wrap(s));
  }

  double period() const { return period_; }
  bool closed() const { return closed_; }
  double wrap(double s) const;

  const GeometryConfig& config() const { return config_; }
  GeometryConfig& config() { return config_; }

  bool valid() const { return backend_ != nullptr; }

 private:
  std::shared_ptr<const Backend> backend_;
  double period_ = 0.0;
  bool closed_ = false;
  GeometryConfig config_;
};

ParametricCurve fit_periodic_curve(const std::vector<Eigen::Vector3d>& center_waypoints,
                                   const std::vector<Eigen::Vector3d>& reference_waypoints,
                                   KnotSpacing spacing = KnotSpacing::unit,
                                   GeometryConfig config = {});

/// Open-curve variant for straight (non-closing) tracks; natural end
/// conditions, same parameter convention as fit_periodic_curve.
ParametricCurve fit_open_curve(const std::vector<Eigen::Vector3d>& center_waypoints,
                               const std::vector<Eigen::Vector3d>& reference_waypoints,
                               KnotSpacing spacing = KnotSpacing::unit,
                               GeometryConfig config = {});

/// Orthonormal frame and curvatures at s. Throws ErrorCode::geometry for
/// pathological frames (degenerate tangent or reference).
FrameSample frame_at(const ParametricCurve& curve, double s);

Eigen::Vector3d curvilinear_to_global(const ParametricCurve& curve, const CurvilinearState& state);
Eigen::Vector3d curvilinear_to_global(const ParametricCurve& curve, double s, double y, double n);

/// Inverts the position map near s_hint by Newton iteration on the tangency
/// residual (x - x^c(s)) . e_s(s) = 0. Throws when the iteration fails or the
/// recovered point lies outside the regular neighborhood.
CurvilinearState global_to_curvilinear(const ParametricCurve& curve,
                                       const Eigen::Vector3d& x,
                                       double s_hint);

/// Kinematic rates (s_dot, y_dot, n_dot) given velocity components expressed
/// in the frame basis. Throws when the regularity denominator is not positive.
Eigen::Vector3d curvilinear_rates(const FrameSample& frame,
                                  double y,
                                  double n,
                                  const Eigen::Vector3d& v_frame);

/// kappa_y * n + kappa_n * y; stays below lambda < 1 on the regular
/// neighborhood of the centerline.
double regularity_margin(const FrameSample& frame, double y, double n);

/// Angular velocity of the parametric frame, expressed in frame coordinates.
Eigen::Vector3d frame_angular_velocity(const FrameSample& frame, double s_dot);

/// Effective angular velocity driving the frame-relative orientation R_cb.
Eigen::Vector3d relative_angular_velocity(const Eigen::Vector3d& omega_body,
                                          const Eigen::Matrix3d& r_cb,
                                          const Eigen::Vector3d& eta_p);

}  // namespace raceline::geometry
