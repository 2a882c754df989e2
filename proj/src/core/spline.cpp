#include "spline.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "error.hpp"

namespace raceline::geometry {

namespace {

// Solves the tridiagonal (cyclic for periodic) moment system for the knot
// second derivatives, one right-hand side per coordinate.
Eigen::MatrixX3d solve_moments(const std::vector<double>& h,
                               const std::vector<Eigen::Vector3d>& y,
                               CubicSpline3::Boundary boundary) {
  const int n = static_cast<int>(y.size());
  Eigen::MatrixX3d rhs = Eigen::MatrixX3d::Zero(n, 3);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(3 * static_cast<std::size_t>(n));

  auto slope = [&](int i) -> Eigen::Vector3d {
    return (y[(i + 1) % n] - y[i]) / h[i];
  };

  if (boundary == CubicSpline3::Boundary::periodic) {
    for (int i = 0; i < n; ++i) {
      const int prev = (i + n - 1) % n;
      trips.emplace_back(i, prev, h[prev] / 6.0);
      trips.emplace_back(i, i, (h[prev] + h[i]) / 3.0);
      trips.emplace_back(i, (i + 1) % n, h[i] / 6.0);
      rhs.row(i) = (slope(i) - slope(prev)).transpose();
    }
  } else {
    trips.emplace_back(0, 0, 1.0);
    trips.emplace_back(n - 1, n - 1, 1.0);
    for (int i = 1; i + 1 < n; ++i) {
      trips.emplace_back(i, i - 1, h[i - 1] / 6.0);
      trips.emplace_back(i, i, (h[i - 1] + h[i]) / 3.0);
      trips.emplace_back(i, i + 1, h[i] / 6.0);
      rhs.row(i) = (slope(i) - slope(i - 1)).transpose();
    }
  }

  Eigen::SparseMatrix<double> lhs(n, n);
  lhs.setFromTriplets(trips.begin(), trips.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(lhs);
  if (lu.info() != Eigen::Success) {
    throw Error(ErrorCode::geometry, "spline moment system is singular");
  }
  Eigen::MatrixX3d m(n, 3);
  for (int c = 0; c < 3; ++c) m.col(c) = lu.solve(rhs.col(c));
  return m;
}

}  // namespace

CubicSpline3::CubicSpline3(std::vector<double> knots,
                           std::vector<Eigen::Vector3d> values,
                           Boundary boundary,
                           double span)
    : knots_(std::move(knots)), values_(std::move(values)), boundary_(boundary) {
  const int n = static_cast<int>(knots_.size());
  if (n < 2 || values_.size() != knots_.size()) {
    throw Error(ErrorCode::invalid_argument, "spline needs two or more knots");
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (!(knots_[i] < knots_[i + 1])) {
      throw Error(ErrorCode::invalid_argument, "spline knots must be strictly increasing");
    }
  }

  std::vector<double> h;
  if (boundary_ == Boundary::periodic) {
    if (!(span > knots_.back() - knots_.front())) {
      throw Error(ErrorCode::invalid_argument, "periodic spline span must exceed the knot range");
    }
    span_ = span;
    h.resize(n);
    for (int i = 0; i + 1 < n; ++i) h[i] = knots_[i + 1] - knots_[i];
    h[n - 1] = span_ - (knots_.back() - knots_.front());
  } else {
    span_ = knots_.back() - knots_.front();
    h.resize(n - 1);
    for (int i = 0; i + 1 < n; ++i) h[i] = knots_[i + 1] - knots_[i];
  }

  const Eigen::MatrixX3d m = solve_moments(h, values_, boundary_);
  second_derivs_.resize(values_.size());
  for (int i = 0; i < n; ++i) second_derivs_[i] = m.row(i).transpose();
}

double CubicSpline3::wrap(double s) const {
  if (boundary_ != Boundary::periodic) return s;
  double u = std::fmod(s - knots_.front(), span_);
  if (u < 0.0) u += span_;
  return knots_.front() + u;
}

int CubicSpline3::segment_index(double s, double& local) const {
  const int n = static_cast<int>(knots_.size());
  if (boundary_ == Boundary::periodic) {
    const double w = wrap(s);
    auto it = std::upper_bound(knots_.begin(), knots_.end(), w);
    int i = static_cast<int>(it - knots_.begin()) - 1;
    if (i < 0) i = 0;
    local = w - knots_[i];
    return i;
  }
  auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
  int i = static_cast<int>(it - knots_.begin()) - 1;
  i = std::clamp(i, 0, n - 2);
  local = s - knots_[i];
  return i;
}

Eigen::Vector3d CubicSpline3::value(double s) const {
  double u = 0.0;
  const int i = segment_index(s, u);
  const int n = static_cast<int>(knots_.size());
  const int j = (i + 1) % n;
  const double h = (boundary_ == Boundary::periodic && i == n - 1)
                       ? span_ - (knots_.back() - knots_.front())
                       : knots_[i + 1] - knots_[i];
  const double a = h - u;
  const Eigen::Vector3d& mi = second_derivs_[i];
  const Eigen::Vector3d& mj = second_derivs_[j];
  return (mi * a * a * a + mj * u * u * u) / (6.0 * h) +
         (values_[i] / h - mi * h / 6.0) * a + (values_[j] / h - mj * h / 6.0) * u;
}

Eigen::Vector3d CubicSpline3::derivative(double s) const {
  double u = 0.0;
  const int i = segment_index(s, u);
  const int n = static_cast<int>(knots_.size());
  const int j = (i + 1) % n;
  const double h = (boundary_ == Boundary::periodic && i == n - 1)
                       ? span_ - (knots_.back() - knots_.front())
                       : knots_[i + 1] - knots_[i];
  const double a = h - u;
  const Eigen::Vector3d& mi = second_derivs_[i];
  const Eigen::Vector3d& mj = second_derivs_[j];
  return (-mi * a * a + mj * u * u) / (2.0 * h) + (values_[j] - values_[i]) / h -
         (mj - mi) * h / 6.0;
}

Eigen::Vector3d CubicSpline3::second_derivative(double s) const {
  double u = 0.0;
  const int i = segment_index(s, u);
  const int n = static_cast<int>(knots_.size());
  const int j = (i + 1) % n;
  const double h = (boundary_ == Boundary::periodic && i == n - 1)
                       ? span_ - (knots_.back() - knots_.front())
                       : knots_[i + 1] - knots_[i];
  const double a = h - u;
  return (second_derivs_[i] * a + second_derivs_[j] * u) / h;
}

}  // namespace raceline::geometry
