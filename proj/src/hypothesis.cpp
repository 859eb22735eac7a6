#include "pacpose/hypothesis.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>

#include "pacpose/error.hpp"

namespace pac {

void RotationSamplingConfig::validate() const {
  if (n_viewpoints < 1 || n_inplane < 1) {
    throw InvalidInput("viewpoint and in-plane counts must be at least 1");
  }
  if (std::abs(gravity_up.norm() - 1.0) > 1e-9) {
    throw InvalidInput("gravity up vector must be unit length");
  }
  if (!(tau >= -1.0 && tau <= 1.0)) {
    throw InvalidInput("tau must lie in [-1, 1]");
  }
}

std::vector<Eigen::Vector3d> fibonacci_directions(int n) {
  if (n < 1) {
    throw InvalidInput("direction count must be at least 1");
  }
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  std::vector<Eigen::Vector3d> dirs;
  dirs.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = i * golden_angle;
    dirs.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return dirs;
}

Rotation rotation_from_direction(const Eigen::Vector3d& d) {
  if (std::abs(d.norm() - 1.0) > 1e-6) {
    throw InvalidInput("direction must be unit length");
  }
  // Pick a helper axis that is never parallel to d, build a right-handed
  // frame whose third column is d.
  Eigen::Vector3d h(0.0, 1.0, 0.0);
  if (std::abs(d.dot(h)) > 0.99) {
    h = Eigen::Vector3d(1.0, 0.0, 0.0);
  }
  const Eigen::Vector3d c0 = h.cross(d).normalized();
  const Eigen::Vector3d c1 = d.cross(c0);
  Eigen::Matrix3d m;
  m.col(0) = c0;
  m.col(1) = c1;
  m.col(2) = d;
  return Rotation::from_matrix(m);
}

std::vector<Rotation> build_rotation_set(const RotationSamplingConfig& cfg) {
  cfg.validate();
  const std::vector<Eigen::Vector3d> dirs = fibonacci_directions(cfg.n_viewpoints);
  std::vector<Rotation> out;
  out.reserve(static_cast<std::size_t>(cfg.n_viewpoints) * cfg.n_inplane);
  for (int i = 0; i < cfg.n_viewpoints; ++i) {
    const Rotation view = rotation_from_direction(dirs[i]);
    for (int j = 0; j < cfg.n_inplane; ++j) {
      const double alpha = 2.0 * M_PI * j / cfg.n_inplane;
      const Rotation inplane =
          Rotation::from_axis_angle(Eigen::Vector3d(0.0, 0.0, 1.0), alpha);
      out.push_back((view * inplane).inverse());
    }
  }
  return out;
}

std::vector<std::size_t> gravity_retained_indices(const std::vector<Rotation>& rotations,
                                                  const RotationSamplingConfig& cfg) {
  std::vector<std::size_t> kept;
  kept.reserve(rotations.size());
  for (std::size_t i = 0; i < rotations.size(); ++i) {
    const Eigen::Vector3d axis_in_camera = rotations[i].matrix().col(2);
    if (axis_in_camera.dot(cfg.gravity_up) >= cfg.tau) {
      kept.push_back(i);
    }
  }
  return kept;
}

std::vector<Rotation> prune_by_gravity(const std::vector<Rotation>& rotations,
                                       const RotationSamplingConfig& cfg) {
  std::vector<Rotation> out;
  const std::vector<std::size_t> kept = gravity_retained_indices(rotations, cfg);
  out.reserve(kept.size());
  for (std::size_t i : kept) out.push_back(rotations[i]);
  return out;
}

namespace {

// Linear interpolation between closest ranks on the sorted list.
double percentile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) {
    throw InvalidInput("percentile of empty list");
  }
  if (sorted.size() == 1) return sorted.front();
  const double rank = p / 100.0 * (sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(rank);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = rank - lo;
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

Eigen::Vector3d init_translation(const Observation& query, const Intrinsics& K,
                                 const SymmetryPrior& prior) {
  if (!(prior.diameter > 0.0)) {
    throw InvalidInput("symmetry prior must carry a positive diameter");
  }
  double sum_u = 0.0;
  double sum_v = 0.0;
  std::vector<double> depths;
  depths.reserve(query.pixel_count());
  for (int v = 0; v < query.height; ++v) {
    for (int u = 0; u < query.width; ++u) {
      const std::size_t i = query.index(u, v);
      if (!query.valid[i]) continue;
      sum_u += u;
      sum_v += v;
      depths.push_back(query.xyz[i].z());
    }
  }
  if (depths.empty()) {
    throw NoObservation("query observation has no valid pixels");
  }
  const double n = static_cast<double>(depths.size());
  const double uc = sum_u / n;
  const double vc = sum_v / n;

  std::sort(depths.begin(), depths.end());
  const double z_med = percentile(depths, 50.0);
  const double envelope = percentile(depths, 95.0) - percentile(depths, 5.0);
  const double z_offset = std::max(envelope / 2.0, prior.diameter / 4.0);

  const Eigen::Vector3d surface(z_med * (uc - K.cx) / K.fx, z_med * (vc - K.cy) / K.fy,
                                z_med);
  return surface + Eigen::Vector3d(0.0, 0.0, z_offset);
}

HypothesisSet initialize(const Observation& query, const Intrinsics& K,
                         const SymmetryPrior& prior, const RotationSamplingConfig& cfg) {
  cfg.validate();
  const Eigen::Vector3d t = init_translation(query, K, prior);
  const std::vector<Rotation> full = build_rotation_set(cfg);
  const std::vector<std::size_t> kept = gravity_retained_indices(full, cfg);
  if (kept.empty()) {
    throw EmptyHypothesisSet("gravity pruning removed every rotation hypothesis");
  }
  HypothesisSet set;
  set.poses.reserve(kept.size());
  set.provenance.reserve(kept.size());
  for (std::size_t idx : kept) {
    set.poses.push_back(Pose{full[idx], t});
    set.provenance.push_back(HypothesisProvenance{static_cast<int>(idx / cfg.n_inplane),
                                                  static_cast<int>(idx % cfg.n_inplane)});
  }
  return set;
}

}  // namespace pac
