#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "pacpose/geometry.hpp"
#include "pacpose/projection.hpp"
#include "pacpose/synth.hpp"

namespace pac::testing {

// Platform-stable RNG so frozen expected values do not depend on libstdc++
// distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Eigen::Vector3d unit_vector() {
    while (true) {
      const Eigen::Vector3d v(uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0));
      const double n = v.norm();
      if (n > 1e-3 && n <= 1.0) return v / n;
    }
  }

  Rotation rotation() { return Rotation::from_axis_angle(unit_vector(), uniform(0.0, M_PI)); }

  Rotation rotation_within(double max_angle_rad) {
    return Rotation::from_axis_angle(unit_vector(), uniform(0.0, max_angle_rad));
  }

 private:
  std::uint64_t state_;
};

inline Intrinsics test_camera(int size = 160, double f = 220.0) {
  return Intrinsics{f, f, size / 2.0, size / 2.0, size, size};
}

// Object tilted from the camera axis and spun in-plane, placed on the optical
// axis. Keeps the object z-axis inside the gravity cone used by the pipeline
// defaults.
inline Pose tilted_pose(double tilt_rad, double spin_rad, double distance,
                        const Eigen::Vector3d& lateral = Eigen::Vector3d::Zero()) {
  const Rotation tilt = Rotation::from_axis_angle(Eigen::Vector3d(1, 0, 0), tilt_rad);
  const Rotation spin = Rotation::from_axis_angle(Eigen::Vector3d(0, 0, 1), spin_rad);
  Pose pose;
  pose.rotation = tilt * spin;
  pose.translation = Eigen::Vector3d(lateral.x(), lateral.y(), distance);
  return pose;
}

// max over rows of `from` of the distance to the nearest row of `to`.
inline double directed_hausdorff(const std::vector<Eigen::Vector3d>& from,
                                 const std::vector<Eigen::Vector3d>& to) {
  double worst = 0.0;
  for (const Eigen::Vector3d& a : from) {
    double best2 = std::numeric_limits<double>::infinity();
    for (const Eigen::Vector3d& b : to) {
      best2 = std::min(best2, (a - b).squaredNorm());
    }
    worst = std::max(worst, best2);
  }
  return std::sqrt(worst);
}

// Gather-style re-evaluation of the splat competition: per pixel, scan every
// point, apply the documented rules (direct beats spread, then energy, then
// index). Independent of the scatter implementation's bookkeeping.
inline std::vector<std::int32_t> oracle_splat_winners(
    const std::vector<TransformedPoint>& points, const Intrinsics& K,
    const SplatConfig& cfg) {
  const std::size_t n = static_cast<std::size_t>(K.width) * K.height;
  std::vector<std::int32_t> winners(n, -1);
  std::vector<long> ucs(points.size()), vcs(points.size());
  std::vector<bool> usable(points.size(), false);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Eigen::Vector3d& p = points[i].position;
    if (!(p.z() > 0.0)) continue;
    ucs[i] = std::lround(K.fx * p.x() / p.z() + K.cx);
    vcs[i] = std::lround(K.fy * p.y() / p.z() + K.cy);
    usable[i] = true;
  }
  for (int v = 0; v < K.height; ++v) {
    for (int u = 0; u < K.width; ++u) {
      int best_tier = -1;
      double best_energy = std::numeric_limits<double>::infinity();
      std::int32_t best_index = -1;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (!usable[i]) continue;
        const long du = u - ucs[i];
        const long dv = v - vcs[i];
        if (du < -1 || du > 1 || dv < -1 || dv > 1) continue;
        const int tier = (du == 0 && dv == 0) ? 1 : 0;
        const double energy =
            points[i].position.z() +
            cfg.kernel_weight * cfg.kernel_at(static_cast<int>(du), static_cast<int>(dv));
        const bool wins =
            tier > best_tier || (tier == best_tier && energy < best_energy);
        if (wins) {
          best_tier = tier;
          best_energy = energy;
          best_index = static_cast<std::int32_t>(i);
        }
      }
      winners[static_cast<std::size_t>(v) * K.width + u] = best_index;
    }
  }
  return winners;
}

// Observation points mapped into the object frame via the ground-truth pose.
inline std::vector<Eigen::Vector3d> observed_object_points(const Observation& obs,
                                                           const Pose& pose) {
  const Eigen::Matrix3d rt = pose.rotation.matrix().transpose();
  std::vector<Eigen::Vector3d> out;
  out.reserve(obs.pixel_count());
  for (std::size_t i = 0; i < obs.pixel_count(); ++i) {
    if (obs.valid[i]) out.push_back(rt * (obs.xyz[i] - pose.translation));
  }
  return out;
}

}  // namespace pac::testing
