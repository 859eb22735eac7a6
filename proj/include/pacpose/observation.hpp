#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <vector>

#include "pacpose/geometry.hpp"

namespace pac {

// Pixel-aligned RGB-D view: color, camera-frame coordinates, validity mask,
// and an optional per-pixel weight channel in [0, 1]. xyz is undefined at
// invalid pixels; no sentinel values participate in computation.
struct Observation {
  int width = 0;
  int height = 0;
  std::vector<std::array<std::uint8_t, 3>> rgb;
  std::vector<Eigen::Vector3d> xyz;
  std::vector<std::uint8_t> valid;
  std::vector<double> prior;  // empty when absent

  static Observation create(int width, int height);

  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(v) * width + u;
  }
  std::size_t pixel_count() const { return rgb.size(); }
  bool has_prior() const { return !prior.empty(); }
  int valid_count() const;
};

// Checks the structural invariants: positive depth at valid pixels,
// back-projection consistency against K within half a pixel, prior in [0,1].
// Throws InvalidInput on violation.
void validate_observation(const Observation& obs, const Intrinsics& K);

enum class SymmetryAxis : std::uint8_t { X, Y, Z, None };

// Object-level semantic prior: one axis-aligned reflection plane in the
// object frame (normal along plane_axis, passing through plane_offset on that
// axis) plus the physical diameter.
struct SymmetryPrior {
  SymmetryAxis plane_axis = SymmetryAxis::None;
  double plane_offset = 0.0;  // meters
  double diameter = 0.0;      // meters

  bool has_plane() const { return plane_axis != SymmetryAxis::None; }
};

// Mirrors the coordinate along the prior's plane axis about plane_offset.
// Requires plane_axis != None.
Eigen::Vector3d reflect_point(const Eigen::Vector3d& p, const SymmetryPrior& prior);

}  // namespace pac
