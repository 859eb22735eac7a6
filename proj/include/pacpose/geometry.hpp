#pragma once

#include <Eigen/Core>

namespace pac {

// Element of SO(3), stored as a row-major-semantics 3x3 orthonormal matrix.
// Construction validates orthonormality and det = +1; products are snapped
// back onto the manifold via polar projection so long composition chains do
// not drift.
class Rotation {
 public:
  Rotation() : m_(Eigen::Matrix3d::Identity()) {}

  // Validates R Rt = I and det(R) = +1 within `tol`, then polar-projects.
  static Rotation from_matrix(const Eigen::Matrix3d& m, double tol = 1e-9);

  static Rotation from_axis_angle(const Eigen::Vector3d& axis, double angle_rad);

  // Nearest rotation (Frobenius) to an arbitrary matrix.
  static Rotation orthonormalized(const Eigen::Matrix3d& m);

  const Eigen::Matrix3d& matrix() const { return m_; }

  Rotation inverse() const;
  Rotation operator*(const Rotation& rhs) const;
  Eigen::Vector3d operator*(const Eigen::Vector3d& p) const { return m_ * p; }

  // Geodesic distance in radians.
  double angle_to(const Rotation& other) const;

  double orthonormality_error() const;
  bool is_valid(double tol = 1e-9) const;

 private:
  struct Unchecked {};
  Rotation(const Eigen::Matrix3d& m, Unchecked) : m_(m) {}

  Eigen::Matrix3d m_;
};

// Rigid transform: x_out = rotation * x + translation. Translation in meters.
struct Pose {
  Rotation rotation;
  Eigen::Vector3d translation{0.0, 0.0, 0.0};

  Eigen::Vector3d operator*(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }

  // Composition: (a * b) applies b first, then a.
  Pose operator*(const Pose& b) const {
    return Pose{rotation * b.rotation, rotation * b.translation + translation};
  }

  Pose inverse() const {
    Rotation rinv = rotation.inverse();
    return Pose{rinv, -(rinv * translation)};
  }
};

// Pinhole camera. Focal lengths and principal point in pixels.
struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  void validate() const;

  // z > 0 required.
  Eigen::Vector2d project(const Eigen::Vector3d& p) const;

  bool contains(double u, double v) const {
    return u >= 0.0 && u < width && v >= 0.0 && v < height;
  }
};

// Ray through pixel (u, v) scaled to depth `depth_m` (the z-coordinate, not
// the ray length).
Eigen::Vector3d backproject(double depth_m, double u, double v, const Intrinsics& K);

}  // namespace pac
