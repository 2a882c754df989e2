#include "dynamics.hpp"

#include <cmath>

#include "error.hpp"

namespace raceline::dynamics {

void VehicleParams::validate() const {
  if (!(mass > 0.0) || !(gravity > 0.0) || !(arm_length > 0.0) || !(torque_coeff > 0.0) ||
      !(thrust_to_weight > 0.0) || !(inertia.minCoeff() > 0.0)) {
    throw Error(ErrorCode::validation, "vehicle parameters must be positive");
  }
  if (min_thrust < 0.0) {
    throw Error(ErrorCode::validation, "min_thrust must be nonnegative");
  }
  if (min_thrust > max_rotor_thrust()) {
    throw Error(ErrorCode::validation, "min_thrust exceeds the per-rotor thrust cap");
  }
}

Eigen::Matrix3d quat_to_rotation(const Eigen::Vector4d& q) {
  Eigen::Matrix3d r;
  for (int c = 0; c < 3; ++c) {
    r.col(c) = quat_rotate(q, Eigen::Vector3d(Eigen::Vector3d::Unit(c)));
  }
  return r;
}

Eigen::Vector4d quat_conjugate(const Eigen::Vector4d& q) {
  return {q(0), -q(1), -q(2), -q(3)};
}

Eigen::Vector4d quat_normalized(const Eigen::Vector4d& q) {
  const double n = q.norm();
  if (n <= 0.0) throw Error(ErrorCode::invalid_argument, "cannot normalize a zero quaternion");
  return q / n;
}

Eigen::Vector4d quat_from_two_vectors(const Eigen::Vector3d& from, const Eigen::Vector3d& to) {
  const Eigen::Vector3d f = from.normalized();
  const Eigen::Vector3d t = to.normalized();
  const double c = f.dot(t);
  if (c < -1.0 + 1e-12) {
    // Antipodal: rotate pi about any axis orthogonal to `from`.
    Eigen::Vector3d axis = f.cross(Eigen::Vector3d::UnitX());
    if (axis.squaredNorm() < 1e-12) axis = f.cross(Eigen::Vector3d::UnitY());
    axis.normalize();
    return {0.0, axis.x(), axis.y(), axis.z()};
  }
  const Eigen::Vector3d axis = f.cross(t);
  Eigen::Vector4d q;
  q << 1.0 + c, axis.x(), axis.y(), axis.z();
  return quat_normalized(q);
}

Wrench quadrotor_wrench(const Eigen::Vector4d& q, const Eigen::Vector4d& thrusts,
                        const VehicleParams& p) {
  Wrench w;
  quadrotor_wrench<double>(q, thrusts, p, w.force, w.moment);
  return w;
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> rigid_body_derivative(
    const RigidBodyState& state, const Wrench& wrench, const VehicleParams& p) {
  Eigen::Vector3d v_dot, omega_dot;
  rigid_body_derivative<double>(state.velocity_body, state.omega_body, wrench.force,
                                wrench.moment, p, v_dot, omega_dot);
  return {v_dot, omega_dot};
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> point_mass_derivative(
    const Eigen::Vector3d& /*position*/, const Eigen::Vector3d& velocity,
    const Eigen::Vector3d& thrust, const VehicleParams& p) {
  Eigen::Vector3d x_dot, v_dot;
  point_mass_derivative<double>(velocity, thrust, p, x_dot, v_dot);
  return {x_dot, v_dot};
}

}  // namespace raceline::dynamics
