#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "pacpose/geometry.hpp"
#include "pacpose/observation.hpp"
#include "pacpose/projection.hpp"

namespace pac {

struct RefineConfig {
  int iterations = 3;
  double max_correspondence_dist = 0.0;  // meters, must be set > 0
  int min_correspondences = 20;
  bool use_prior_weights = true;
  // Pixel window for correspondence search. Each projected pixel pairs with
  // the best color match among gated query pixels this many pixels around its
  // own location; 0 restricts pairing to the co-located pixel. Appearance is
  // what makes tangential motion observable on smooth surfaces.
  int search_radius_px = 5;

  void validate() const;
};

// One rigid correction mapping projected points onto query points:
// q ~= delta_rotation * p + delta_translation. `degenerate` marks updates
// that could not be estimated (too few or rank-deficient correspondences);
// those carry the identity.
struct PoseUpdate {
  Rotation delta_rotation;
  Eigen::Vector3d delta_translation{0.0, 0.0, 0.0};
  int n_correspondences = 0;
  double rms_residual = 0.0;
  bool degenerate = false;
};

// Weighted orthogonal Procrustes over co-valid pixels whose projected and
// query coordinates lie within max_correspondence_dist. Weights multiply the
// propagated prior channels when use_prior_weights is set.
PoseUpdate compute_update(const ProjectionResult& proj, const Observation& query,
                          const RefineConfig& cfg);

struct RefineIteration {
  Pose pose;  // pose after applying this iteration's update
  PoseUpdate update;
};

struct RefineResult {
  Pose pose;
  std::vector<RefineIteration> history;

  bool all_degenerate() const;
};

// K rounds of project -> compute_update -> apply. The rigid update composes
// onto the hypothesis (R <- dR * R, t <- dR * t + dt) so that the corrected
// pose reproduces the aligned point set; degenerate iterations leave the pose
// unchanged and are flagged in the history.
RefineResult refine_hypothesis(const Pose& hyp, const Observation& ref_obs,
                               const Pose& ref_pose, const Observation& query,
                               const SymmetryPrior& prior, const Intrinsics& K,
                               const SplatConfig& splat_cfg, const RefineConfig& cfg);

struct RefineTimings {
  double projection_ms = 0.0;
  double update_ms = 0.0;
};

// Same loop, reusing an already-fused reference (the fusion depends only on
// the reference, so batch callers share it across hypotheses). `timings`,
// when non-null, accumulates per-stage wall time.
RefineResult refine_hypothesis_fused(const Pose& hyp, const AugmentedReference& aug,
                                     const Pose& ref_pose, const Observation& query,
                                     const Intrinsics& K, const SplatConfig& splat_cfg,
                                     const RefineConfig& cfg,
                                     RefineTimings* timings = nullptr);

// Ground-truth increment from a hypothesis to a target pose:
// (truth.R * hyp.Rt, truth.t - hyp.t). Test oracle for the refiner.
std::pair<Rotation, Eigen::Vector3d> relative_pose_target(const Pose& hyp,
                                                          const Pose& truth);

}  // namespace pac
