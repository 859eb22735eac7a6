#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <vector>

#include "pacpose/geometry.hpp"
#include "pacpose/observation.hpp"

namespace pac {

// One reference surface sample: position in the reference camera frame plus
// the attributes that ride along through projection.
struct RefPoint {
  Eigen::Vector3d position;
  std::array<std::uint8_t, 3> color;
  double prior_weight = 1.0;
  bool mirrored = false;
};

// Valid reference pixels plus, when a symmetry plane is known, one reflected
// counterpart per source point. points[k + source_count] mirrors points[k].
struct AugmentedReference {
  std::vector<RefPoint> points;
  std::size_t source_count = 0;
};

struct TransformedPoint {
  Eigen::Vector3d position;
  std::array<std::uint8_t, 3> color;
  double prior_weight = 1.0;
};

// Splat competition parameters. Each point deposits into the fixed 3x3
// neighborhood of its rounded projection; kernel holds the per-offset profile
// (row-major over dv, du in {-1,0,1}) and kernel_weight scales it into a
// depth-comparable penalty.
struct SplatConfig {
  double kernel_weight = 0.002;  // meters
  std::array<double, 9> kernel = {1.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0};

  double kernel_at(int du, int dv) const {
    return kernel[static_cast<std::size_t>(dv + 1) * 3 + (du + 1)];
  }
  void validate() const;
};

// Per-pixel winner of the ray competition. xyz holds the winning point's
// hypothesis-frame position; rgb/prior come from the same point (cross-modal
// consistency); winner indexes the input point list, -1 where nothing landed.
struct ProjectionResult {
  int width = 0;
  int height = 0;
  std::vector<Eigen::Vector3d> xyz;
  std::vector<std::array<std::uint8_t, 3>> rgb;
  std::vector<double> prior;
  std::vector<std::uint8_t> valid;
  std::vector<std::int32_t> winner;

  static ProjectionResult create(int width, int height);
  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(v) * width + u;
  }
  int valid_count() const;
};

// Lifts valid reference pixels to points and, when the prior names a plane,
// appends their reflections across it (computed in the object frame defined
// by ref_pose). Mirrored colors are replaced by a grayscale proxy; prior
// weights are copied unchanged.
AugmentedReference mirror_fuse(const Observation& ref_obs, const Pose& ref_pose,
                               const SymmetryPrior& prior);

// p -> hyp.R * ref.Rt * (p - ref.t) + hyp.t; attributes pass through.
std::vector<TransformedPoint> transform_to_hypothesis(const AugmentedReference& aug,
                                                      const Pose& ref_pose,
                                                      const Pose& hyp);

// Ray-wise competition: every point with z > 0 competes at each in-bounds
// pixel of the 3x3 block around its rounded projection. Direct deposits
// (zero kernel offset) always beat spread deposits; within a class the
// smaller energy z + kernel_weight * kernel(du, dv) wins, exact ties go to
// the lower point index. Spread deposits exist to fill pixels that received
// no direct hit, so an exact re-projection reproduces its source image.
ProjectionResult splat(const std::vector<TransformedPoint>& points, const Intrinsics& K,
                       const SplatConfig& cfg);

// mirror_fuse then transform_to_hypothesis then splat.
ProjectionResult project(const Observation& ref_obs, const Pose& ref_pose, const Pose& hyp,
                         const SymmetryPrior& prior, const Intrinsics& K,
                         const SplatConfig& cfg);

}  // namespace pac
