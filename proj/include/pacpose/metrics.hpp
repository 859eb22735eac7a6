#pragma once

#include <Eigen/Core>
#include <vector>

#include "pacpose/geometry.hpp"

namespace pac {

// Object-frame surface samples used for pose-error evaluation. The diameter
// is the maximum pairwise vertex distance; with_claimed_diameter re-checks a
// caller-supplied value against the recomputed one.
struct ModelPoints {
  std::vector<Eigen::Vector3d> vertices;
  double diameter = 0.0;

  static ModelPoints create(std::vector<Eigen::Vector3d> vertices);
  static ModelPoints with_claimed_diameter(std::vector<Eigen::Vector3d> vertices,
                                           double claimed, double tol = 1e-6);
};

// Mean per-vertex distance between the two transformed models.
double add_error(const Pose& pred, const Pose& truth, const ModelPoints& model);

// Closest-vertex variant for rotationally ambiguous objects; O(n^2).
double add_s_error(const Pose& pred, const Pose& truth, const ModelPoints& model);

// Percentage of errors strictly below fraction * diameter.
double add_accuracy(const std::vector<double>& errors, const ModelPoints& model,
                    double fraction);

// Exact area under the empirical accuracy-vs-threshold step curve over
// [0, max_threshold], normalized to [0, 1].
double auc(const std::vector<double>& errors, double max_threshold);

}  // namespace pac
