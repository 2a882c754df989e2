#pragma once

#include <Eigen/Dense>
#include <array>
#include <utility>

namespace raceline::dynamics {

/// Rigid-body and rotor parameters shared by the point-mass and quadrotor
/// models. Defaults are the reference quadrotor used throughout.
struct VehicleParams {
  double mass = 1.0;         // kg
  double gravity = 9.81;     // m/s^2
  Eigen::Vector3d inertia = {1.0e-3, 1.0e-3, 1.7e-3};  // kg m^2, diagonal
  double arm_length = 0.15;      // m
  double torque_coeff = 0.05;    // m
  double thrust_to_weight = 3.3;
  double min_thrust = 0.2;  // N

  double max_rotor_thrust() const { return thrust_to_weight * mass * gravity / 4.0; }
  double max_total_thrust() const { return thrust_to_weight * mass * gravity; }
  double hover_rotor_thrust() const { return mass * gravity / 4.0; }

  void validate() const;  // throws ErrorCode::validation
};

/// Pose and body-frame velocities; quaternion is scalar-first and encodes
/// the body-to-global rotation R^gb.
struct RigidBodyState {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector4d quaternion = {1.0, 0.0, 0.0, 0.0};
  Eigen::Vector3d velocity_body = Eigen::Vector3d::Zero();
  Eigen::Vector3d omega_body = Eigen::Vector3d::Zero();
};

struct Wrench {
  Eigen::Vector3d force = Eigen::Vector3d::Zero();   // N, body frame
  Eigen::Vector3d moment = Eigen::Vector3d::Zero();  // N m, body frame
};

// --- quaternion algebra (scalar-first, Hamilton product) ---

template <class T>
Eigen::Matrix<T, 4, 1> quat_multiply(const Eigen::Matrix<T, 4, 1>& a,
                                     const Eigen::Matrix<T, 4, 1>& b) {
  Eigen::Matrix<T, 4, 1> q;
  q(0) = a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3);
  q(1) = a(0) * b(1) + a(1) * b(0) + a(2) * b(3) - a(3) * b(2);
  q(2) = a(0) * b(2) - a(1) * b(3) + a(2) * b(0) + a(3) * b(1);
  q(3) = a(0) * b(3) + a(1) * b(2) - a(2) * b(1) + a(3) * b(0);
  return q;
}

/// R(q) v for unit q: body -> global.
template <class T>
Eigen::Matrix<T, 3, 1> quat_rotate(const Eigen::Matrix<T, 4, 1>& q,
                                   const Eigen::Matrix<T, 3, 1>& v) {
  const Eigen::Matrix<T, 3, 1> u = q.template tail<3>();
  const Eigen::Matrix<T, 3, 1> t = u.cross(v);
  return v + T(2.0) * (q(0) * t + u.cross(t));
}

/// R(q)^T v: global -> body.
template <class T>
Eigen::Matrix<T, 3, 1> quat_rotate_inverse(const Eigen::Matrix<T, 4, 1>& q,
                                           const Eigen::Matrix<T, 3, 1>& v) {
  Eigen::Matrix<T, 4, 1> qc;
  qc << q(0), -q(1), -q(2), -q(3);
  return quat_rotate(qc, v);
}

/// q_dot = 1/2 q (x) (0, omega). Norm-preserving to first order.
template <class T>
Eigen::Matrix<T, 4, 1> quaternion_rate(const Eigen::Matrix<T, 4, 1>& q,
                                       const Eigen::Matrix<T, 3, 1>& omega) {
  Eigen::Matrix<T, 4, 1> w;
  w << T(0.0), omega(0), omega(1), omega(2);
  return T(0.5) * quat_multiply(q, w);
}

Eigen::Matrix3d quat_to_rotation(const Eigen::Vector4d& q);
Eigen::Vector4d quat_conjugate(const Eigen::Vector4d& q);
Eigen::Vector4d quat_normalized(const Eigen::Vector4d& q);
/// Minimal rotation taking unit vector `from` onto unit vector `to`.
Eigen::Vector4d quat_from_two_vectors(const Eigen::Vector3d& from, const Eigen::Vector3d& to);

// --- force/moment models ---

/// Four-rotor thrust and drag-torque wrench including gravity resolved into
/// body axes.
template <class T>
void quadrotor_wrench(const Eigen::Matrix<T, 4, 1>& q,
                      const Eigen::Matrix<T, 4, 1>& thrusts,
                      const VehicleParams& p,
                      Eigen::Matrix<T, 3, 1>& force,
                      Eigen::Matrix<T, 3, 1>& moment) {
  Eigen::Matrix<T, 3, 1> e3;
  e3 << T(0.0), T(0.0), T(1.0);
  const Eigen::Matrix<T, 3, 1> gravity_body =
      quat_rotate_inverse(q, Eigen::Matrix<T, 3, 1>(e3 * T(-p.mass * p.gravity)));
  force = gravity_body;
  force(2) += thrusts(0) + thrusts(1) + thrusts(2) + thrusts(3);
  moment(0) = (thrusts(0) + thrusts(1) - thrusts(2) - thrusts(3)) * T(p.arm_length);
  moment(1) = (-thrusts(0) + thrusts(1) + thrusts(2) - thrusts(3)) * T(p.arm_length);
  moment(2) = (thrusts(0) - thrusts(1) + thrusts(2) - thrusts(3)) * T(p.torque_coeff);
}

Wrench quadrotor_wrench(const Eigen::Vector4d& q, const Eigen::Vector4d& thrusts,
                        const VehicleParams& p);

/// Body-frame Newton-Euler rates for a diagonal inertia tensor.
template <class T>
void rigid_body_derivative(const Eigen::Matrix<T, 3, 1>& velocity_body,
                           const Eigen::Matrix<T, 3, 1>& omega_body,
                           const Eigen::Matrix<T, 3, 1>& force,
                           const Eigen::Matrix<T, 3, 1>& moment,
                           const VehicleParams& p,
                           Eigen::Matrix<T, 3, 1>& v_dot,
                           Eigen::Matrix<T, 3, 1>& omega_dot) {
  v_dot = force / T(p.mass) - omega_body.cross(velocity_body);
  Eigen::Matrix<T, 3, 1> i_omega;
  for (int i = 0; i < 3; ++i) i_omega(i) = omega_body(i) * T(p.inertia(i));
  const Eigen::Matrix<T, 3, 1> gyro = omega_body.cross(i_omega);
  for (int i = 0; i < 3; ++i) omega_dot(i) = (moment(i) - gyro(i)) / T(p.inertia(i));
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> rigid_body_derivative(
    const RigidBodyState& state, const Wrench& wrench, const VehicleParams& p);

/// Point mass with a thrust force input, velocity kept in the global frame.
template <class T>
void point_mass_derivative(const Eigen::Matrix<T, 3, 1>& velocity,
                           const Eigen::Matrix<T, 3, 1>& thrust,
                           const VehicleParams& p,
                           Eigen::Matrix<T, 3, 1>& x_dot,
                           Eigen::Matrix<T, 3, 1>& v_dot) {
  x_dot = velocity;
  v_dot = thrust / T(p.mass);
  v_dot(2) -= T(p.gravity);
}

std::pair<Eigen::Vector3d, Eigen::Vector3d> point_mass_derivative(
    const Eigen::Vector3d& position, const Eigen::Vector3d& velocity,
    const Eigen::Vector3d& thrust, const VehicleParams& p);

}  // namespace raceline::dynamics
