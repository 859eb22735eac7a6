#include "pacpose/refine.hpp"

#include <Eigen/SVD>
#include <Eigen/LU>
#include <Eigen/Geometry>
#include <Eigen/Cholesky>
#include <chrono>
#include <cmath>

#include "pacpose/error.hpp"

namespace pac {

void RefineConfig::validate() const {
  if (iterations < 1) {
    throw InvalidInput("refinement needs at least one iteration");
  }
  if (!(max_correspondence_dist > 0.0)) {
    throw InvalidInput("max correspondence distance must be positive");
  }
  if (min_correspondences < 3) {
    throw InvalidInput("rigid alignment needs at least three correspondences");
  }
  if (search_radius_px < 0) {
    throw InvalidInput("search radius cannot be negative");
  }
}


bool RefineResult::all_degenerate() const {
  for (const RefineIteration& it : history) {
    if (!it.update.degenerate) return false;
  }
  return true;
}

PoseUpdate compute_update(const ProjectionResult& proj, const Observation& query,
                          const RefineConfig& cfg) {
  cfg.validate();
  if (proj.width != query.width || proj.height != query.height) {
    throw InvalidInput("projection and query dimensions disagree");
  }

  struct Pair {
    Eigen::Vector3d p;
    Eigen::Vector3d q;
    double w;
  };
  std::vector<Pair> pairs;
  pairs.reserve(proj.xyz.size() / 4);

  const double max_d2 = cfg.max_correspondence_dist * cfg.max_correspondence_dist;
  const int radius = cfg.search_radius_px;
  for (int v = 0; v < proj.height; ++v) {
    for (int u = 0; u < proj.width; ++u) {
      const std::size_t i = proj.index(u, v);
      if (!proj.valid[i]) continue;
      const Eigen::Vector3d& p = proj.xyz[i];

      // Best gated partner by color, then 3D distance, then pixel offset.
      long best_color = std::numeric_limits<long>::max();
      double best_d2 = std::numeric_limits<double>::infinity();
      long best_off = std::numeric_limits<long>::max();
      std::size_t best_j = 0;
      bool found = false;
      for (int dv = -radius; dv <= radius; ++dv) {
        const int vv = v + dv;
        if (vv < 0 || vv >= proj.height) continue;
        for (int du = -radius; du <= radius; ++du) {
          const int uu = u + du;
          if (uu < 0 || uu >= proj.width) continue;
          const std::size_t j = proj.index(uu, vv);
          if (!query.valid[j]) continue;
          const double d2 = (p - query.xyz[j]).squaredNorm();
          if (d2 > max_d2) continue;
          long color = 0;
          for (int c = 0; c < 3; ++c) {
            color += std::abs(static_cast<long>(proj.rgb[i][c]) -
                              static_cast<long>(query.rgb[j][c]));
          }
          const long off = std::abs(du) + std::abs(dv);
          const bool better = color < best_color ||
                              (color == best_color &&
                               (d2 < best_d2 || (d2 == best_d2 && off < best_off)));
          if (better) {
            best_color = color;
            best_d2 = d2;
            best_off = off;
            best_j = j;
            found = true;
          }
        }
      }
      if (!found) continue;
      double w = 1.0;
      if (cfg.use_prior_weights) {
        w = proj.prior[i] * (query.has_prior() ? query.prior[best_j] : 1.0);
      }
      if (w <= 0.0) continue;
      pairs.push_back(Pair{p, query.xyz[best_j], w});
    }
  }

  PoseUpdate update;
  update.n_correspondences = static_cast<int>(pairs.size());
  if (update.n_correspondences < cfg.min_correspondences) {
    update.degenerate = true;
    return update;
  }

  double w_sum = 0.0;
  Eigen::Vector3d mu_p = Eigen::Vector3d::Zero();
  Eigen::Vector3d mu_q = Eigen::Vector3d::Zero();
  for (const Pair& pr : pairs) {
    w_sum += pr.w;
    mu_p += pr.w * pr.p;
    mu_q += pr.w * pr.q;
  }
  mu_p /= w_sum;
  mu_q /= w_sum;

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const Pair& pr : pairs) {
    cov += pr.w * (pr.q - mu_q) * (pr.p - mu_p).transpose();
  }

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d sigma = svd.singularValues();
  // Rank <= 1 leaves the rotation about the dominant axis unconstrained.
  if (!(sigma(0) > 0.0) || sigma(1) < 1e-9 * sigma(0)) {
    update.degenerate = true;
    return update;
  }
  Eigen::Matrix3d s = Eigen::Matrix3d::Identity();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) {
    s(2, 2) = -1.0;
  }
  Eigen::Matrix3d r = svd.matrixU() * s * svd.matrixV().transpose();
  Eigen::Vector3d t = mu_q - r * mu_p;

  update.delta_rotation = Rotation::orthonormalized(r);
  update.delta_translation = t;

  // Point-to-point residual after alignment, over the re-gated pair set.
  double residual = 0.0;
  double rms_wsum = 0.0;
  const Eigen::Matrix3d rm = update.delta_rotation.matrix();
  for (const Pair& pr : pairs) {
    const double r2 = (rm * pr.p + update.delta_translation - pr.q).squaredNorm();
    if (r2 > max_d2) continue;
    residual += pr.w * r2;
    rms_wsum += pr.w;
  }
  update.rms_residual = rms_wsum > 0.0 ? std::sqrt(residual / rms_wsum) : 0.0;
  return update;
}

RefineResult refine_hypothesis_fused(const Pose& hyp, const AugmentedReference& aug,
                                     const Pose& ref_pose, const Observation& query,
                                     const Intrinsics& K, const SplatConfig& splat_cfg,
                                     const RefineConfig& cfg, RefineTimings* timings) {
  cfg.validate();
  using clock = std::chrono::steady_clock;
  RefineResult result;
  result.pose = hyp;
  result.history.reserve(cfg.iterations);
  for (int k = 0; k < cfg.iterations; ++k) {
    const auto t0 = clock::now();
    const ProjectionResult proj =
        splat(transform_to_hypothesis(aug, ref_pose, result.pose), K, splat_cfg);
    const auto t1 = clock::now();
    const PoseUpdate update = compute_update(proj, query, cfg);
    const auto t2 = clock::now();
    if (timings) {
      timings->projection_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
      timings->update_ms += std::chrono::duration<double, std::milli>(t2 - t1).count();
    }
    if (!update.degenerate) {
      result.pose = Pose{update.delta_rotation, update.delta_translation} * result.pose;
    }
    result.history.push_back(RefineIteration{result.pose, update});
  }
  return result;
}

RefineResult refine_hypothesis(const Pose& hyp, const Observation& ref_obs,
                               const Pose& ref_pose, const Observation& query,
                               const SymmetryPrior& prior, const Intrinsics& K,
                               const SplatConfig& splat_cfg, const RefineConfig& cfg) {
  const AugmentedReference aug = mirror_fuse(ref_obs, ref_pose, prior);
  return refine_hypothesis_fused(hyp, aug, ref_pose, query, K, splat_cfg, cfg);
}

std::pair<Rotation, Eigen::Vector3d> relative_pose_target(const Pose& hyp,
                                                          const Pose& truth) {
  return {truth.rotation * hyp.rotation.inverse(), truth.translation - hyp.translation};
}

}  // namespace pac
