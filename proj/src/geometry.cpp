#include "pacpose/geometry.hpp"

#include <Eigen/Geometry>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "pacpose/error.hpp"

namespace pac {

namespace {

Eigen::Matrix3d polar_project(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) {
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(2, 2) = -1.0;
    r = svd.matrixU() * flip * svd.matrixV().transpose();
  }
  return r;
}

}  // namespace

Rotation Rotation::from_matrix(const Eigen::Matrix3d& m, double tol) {
  const Eigen::Matrix3d gram_err = m * m.transpose() - Eigen::Matrix3d::Identity();
  if (gram_err.cwiseAbs().maxCoeff() > tol) {
    throw InvalidInput("rotation matrix is not orthonormal");
  }
  if (std::abs(m.determinant() - 1.0) > tol) {
    throw InvalidInput("rotation matrix determinant is not +1");
  }
  // Stored as given: validated input stays bit-stable across serialization.
  // Drift correction happens in operator*.
  return Rotation(m, Unchecked{});
}

Rotation Rotation::from_axis_angle(const Eigen::Vector3d& axis, double angle_rad) {
  const double n = axis.norm();
  if (n <= 0.0 || !std::isfinite(n)) {
    throw InvalidInput("axis must be nonzero");
  }
  Eigen::AngleAxisd aa(angle_rad, axis / n);
  return Rotation(aa.toRotationMatrix(), Unchecked{});
}

Rotation Rotation::orthonormalized(const Eigen::Matrix3d& m) {
  return Rotation(polar_project(m), Unchecked{});
}

Rotation Rotation::inverse() const {
  return Rotation(m_.transpose(), Unchecked{});
}

Rotation Rotation::operator*(const Rotation& rhs) const {
  return Rotation(polar_project(m_ * rhs.m_), Unchecked{});
}

double Rotation::angle_to(const Rotation& other) const {
  const double c = ((m_.transpose() * other.m_).trace() - 1.0) / 2.0;
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double Rotation::orthonormality_error() const {
  const Eigen::Matrix3d gram_err = m_ * m_.transpose() - Eigen::Matrix3d::Identity();
  return gram_err.cwiseAbs().maxCoeff();
}

bool Rotation::is_valid(double tol) const {
  return orthonormality_error() <= tol && std::abs(m_.determinant() - 1.0) <= tol;
}

void Intrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw InvalidInput("focal lengths must be positive");
  }
  if (width <= 0 || height <= 0) {
    throw InvalidInput("image dimensions must be positive");
  }
  if (cx < 0.0 || cx >= width || cy < 0.0 || cy >= height) {
    throw InvalidInput("principal point must lie inside the image");
  }
}

Eigen::Vector2d Intrinsics::project(const Eigen::Vector3d& p) const {
  if (!(p.z() > 0.0)) {
    throw InvalidInput("cannot project a point with non-positive depth");
  }
  return {fx * p.x() / p.z() + cx, fy * p.y() / p.z() + cy};
}

Eigen::Vector3d backproject(double depth_m, double u, double v, const Intrinsics& K) {
  if (!(depth_m > 0.0)) {
    throw InvalidInput("depth must be positive");
  }
  if (!K.contains(u, v)) {
    throw InvalidInput("pixel outside image bounds");
  }
  return {depth_m * (u - K.cx) / K.fx, depth_m * (v - K.cy) / K.fy, depth_m};
}

}  // namespace pac
