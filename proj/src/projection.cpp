#include "pacpose/projection.hpp"

#include <cmath>
#include <limits>

#include "pacpose/error.hpp"

namespace pac {

void SplatConfig::validate() const {
  if (!(kernel_weight >= 0.0)) {
    throw InvalidInput("kernel weight must be non-negative");
  }
  if (kernel_at(0, 0) != 0.0) {
    throw InvalidInput("kernel must vanish at the center offset");
  }
  for (int dv = -1; dv <= 1; ++dv) {
    for (int du = -1; du <= 1; ++du) {
      const double k = kernel_at(du, dv);
      if (!(k >= 0.0)) {
        throw InvalidInput("kernel values must be non-negative");
      }
      if (k != kernel_at(-du, -dv)) {
        throw InvalidInput("kernel must be symmetric under offset negation");
      }
    }
  }
}

ProjectionResult ProjectionResult::create(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw InvalidInput("projection dimensions must be positive");
  }
  ProjectionResult r;
  r.width = width;
  r.height = height;
  const std::size_t n = static_cast<std::size_t>(width) * height;
  r.xyz.assign(n, Eigen::Vector3d::Zero());
  r.rgb.assign(n, {0, 0, 0});
  r.prior.assign(n, 0.0);
  r.valid.assign(n, 0);
  r.winner.assign(n, -1);
  return r;
}

int ProjectionResult::valid_count() const {
  int n = 0;
  for (std::uint8_t v : valid) n += (v != 0);
  return n;
}

AugmentedReference mirror_fuse(const Observation& ref_obs, const Pose& ref_pose,
                               const SymmetryPrior& prior) {
  AugmentedReference aug;
  const bool mirror = prior.has_plane();

  std::vector<RefPoint>& pts = aug.points;
  pts.reserve(static_cast<std::size_t>(ref_obs.valid_count()) * (mirror ? 2 : 1));
  for (int v = 0; v < ref_obs.height; ++v) {
    for (int u = 0; u < ref_obs.width; ++u) {
      const std::size_t i = ref_obs.index(u, v);
      if (!ref_obs.valid[i]) continue;
      RefPoint p;
      p.position = ref_obs.xyz[i];
      p.color = ref_obs.rgb[i];
      p.prior_weight = ref_obs.has_prior() ? ref_obs.prior[i] : 1.0;
      p.mirrored = false;
      pts.push_back(p);
    }
  }
  aug.source_count = pts.size();
  if (ref_obs.pixel_count() > 0 && aug.source_count == 0) {
    throw NoObservation("reference observation has no valid pixels");
  }

  if (mirror) {
    const Eigen::Matrix3d r = ref_pose.rotation.matrix();
    const Eigen::Matrix3d rt = r.transpose();
    const Eigen::Vector3d t = ref_pose.translation;
    for (std::size_t k = 0; k < aug.source_count; ++k) {
      const RefPoint& src = pts[k];
      const Eigen::Vector3d obj = rt * (src.position - t);
      const Eigen::Vector3d mirrored_obj = reflect_point(obj, prior);
      RefPoint m;
      m.position = r * mirrored_obj + t;
      // Photometric proxy for the unseen back side: luminance only.
      const std::uint8_t gray = static_cast<std::uint8_t>(std::lround(
          (static_cast<int>(src.color[0]) + src.color[1] + src.color[2]) / 3.0));
      m.color = {gray, gray, gray};
      m.prior_weight = src.prior_weight;
      m.mirrored = true;
      pts.push_back(m);
    }
  }
  return aug;
}

std::vector<TransformedPoint> transform_to_hypothesis(const AugmentedReference& aug,
                                                      const Pose& ref_pose,
                                                      const Pose& hyp) {
  const Eigen::Matrix3d a = hyp.rotation.matrix() * ref_pose.rotation.matrix().transpose();
  const Eigen::Vector3d b = hyp.translation - a * ref_pose.translation;
  std::vector<TransformedPoint> out;
  out.reserve(aug.points.size());
  for (const RefPoint& p : aug.points) {
    out.push_back(TransformedPoint{a * p.position + b, p.color, p.prior_weight});
  }
  return out;
}

namespace {

struct Slot {
  double energy = std::numeric_limits<double>::infinity();
  std::int32_t index = -1;
  std::uint8_t direct = 0;
};

inline bool beats(std::uint8_t direct, double energy, const Slot& cur) {
  if (direct != cur.direct) return direct > cur.direct;
  return energy < cur.energy;  // equal energy keeps the earlier (lower) index
}

}  // namespace

ProjectionResult splat(const std::vector<TransformedPoint>& points, const Intrinsics& K,
                       const SplatConfig& cfg) {
  K.validate();
  cfg.validate();
  ProjectionResult result = ProjectionResult::create(K.width, K.height);
  std::vector<Slot> slots(result.xyz.size());

  for (std::size_t i = 0; i < points.size(); ++i) {
    const Eigen::Vector3d& p = points[i].position;
    if (!(p.z() > 0.0)) continue;
    const double uf = K.fx * p.x() / p.z() + K.cx;
    const double vf = K.fy * p.y() / p.z() + K.cy;
    if (!std::isfinite(uf) || !std::isfinite(vf)) continue;
    const long uc = std::lround(uf);
    const long vc = std::lround(vf);
    if (uc < -1 || uc > K.width || vc < -1 || vc > K.height) continue;
    for (int dv = -1; dv <= 1; ++dv) {
      const long v = vc + dv;
      if (v < 0 || v >= K.height) continue;
      for (int du = -1; du <= 1; ++du) {
        const long u = uc + du;
        if (u < 0 || u >= K.width) continue;
        const std::uint8_t direct = (du == 0 && dv == 0) ? 1 : 0;
        const double energy = p.z() + cfg.kernel_weight * cfg.kernel_at(du, dv);
        Slot& slot = slots[static_cast<std::size_t>(v) * K.width + u];
        if (beats(direct, energy, slot)) {
          slot.energy = energy;
          slot.index = static_cast<std::int32_t>(i);
          slot.direct = direct;
        }
      }
    }
  }

  for (std::size_t j = 0; j < slots.size(); ++j) {
    const Slot& slot = slots[j];
    if (slot.index < 0) continue;
    const TransformedPoint& w = points[static_cast<std::size_t>(slot.index)];
    result.xyz[j] = w.position;
    result.rgb[j] = w.color;
    result.prior[j] = w.prior_weight;
    result.valid[j] = 1;
    result.winner[j] = slot.index;
  }
  return result;
}

ProjectionResult project(const Observation& ref_obs, const Pose& ref_pose, const Pose& hyp,
                         const SymmetryPrior& prior, const Intrinsics& K,
                         const SplatConfig& cfg) {
  const AugmentedReference aug = mirror_fuse(ref_obs, ref_pose, prior);
  return splat(transform_to_hypothesis(aug, ref_pose, hyp), K, cfg);
}

}  // namespace pac
