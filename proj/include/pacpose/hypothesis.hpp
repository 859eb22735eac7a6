#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <vector>

#include "pacpose/geometry.hpp"
#include "pacpose/observation.hpp"

namespace pac {

// Rotation search space: viewpoint directions on S2 crossed with in-plane
// rotations, pruned by an up-vector cone.
struct RotationSamplingConfig {
  int n_viewpoints = 42;
  int n_inplane = 6;
  Eigen::Vector3d gravity_up{0.0, 0.0, 1.0};  // unit, camera frame
  double tau = -1.0;                          // cosine threshold; -1 keeps all

  void validate() const;
};

struct HypothesisProvenance {
  int viewpoint = 0;
  int inplane = 0;
};

struct HypothesisSet {
  std::vector<Pose> poses;
  std::vector<HypothesisProvenance> provenance;

  std::size_t size() const { return poses.size(); }
};

// Evenly spread unit directions: z_i = 1 - (2i+1)/n, phi_i = i*pi*(3-sqrt 5).
// Deterministic for a fixed n.
std::vector<Eigen::Vector3d> fibonacci_directions(int n);

// Rotation whose third column is d (maps the canonical object axis [0,0,1]
// onto d). d must be unit within 1e-6.
Rotation rotation_from_direction(const Eigen::Vector3d& d);

// All (viewpoint, in-plane) combinations, viewpoint-major, each stored as
// the inverse of R(d) * R_inplane.
std::vector<Rotation> build_rotation_set(const RotationSamplingConfig& cfg);

// Indices (into `rotations`, order preserved) whose rotated object axis lies
// within the configured up-vector cone: dot(R*[0,0,1], up) >= tau.
std::vector<std::size_t> gravity_retained_indices(const std::vector<Rotation>& rotations,
                                                  const RotationSamplingConfig& cfg);

std::vector<Rotation> prune_by_gravity(const std::vector<Rotation>& rotations,
                                       const RotationSamplingConfig& cfg);

// Shared translation estimate: median-depth surface point through the valid
// mask centroid, pushed toward the volumetric center by
// max(depth envelope / 2, diameter / 4).
Eigen::Vector3d init_translation(const Observation& query, const Intrinsics& K,
                                 const SymmetryPrior& prior);

// Full initial hypothesis set: pruned rotation set paired with one shared
// translation. Throws EmptyHypothesisSet when pruning removes everything and
// NoObservation when the query mask is empty.
HypothesisSet initialize(const Observation& query, const Intrinsics& K,
                         const SymmetryPrior& prior, const RotationSamplingConfig& cfg);

}  // namespace pac
