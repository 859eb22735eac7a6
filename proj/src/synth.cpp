#include "pacpose/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

#include "pacpose/error.hpp"

namespace pac::synth {

namespace {

constexpr double kRayEps = 1e-9;
constexpr int kModelSamples = 4096;

// Deterministic Gaussian source: explicit Box-Muller on bit-derived uniforms
// so outputs do not depend on the standard library's distribution internals.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

  double next() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  double uniform01() {
    // (0, 1) exclusive on both ends.
    return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
  }
  std::mt19937_64 rng_;
};

struct Ray {
  Eigen::Vector3d origin;
  Eigen::Vector3d dir;  // not normalized; parameter equals camera depth
};

std::optional<double> intersect_aabb(const Ray& ray, const Eigen::Vector3d& lo,
                                     const Eigen::Vector3d& hi) {
  double t0 = kRayEps;
  double t1 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    const double o = ray.origin[i];
    const double d = ray.dir[i];
    if (std::abs(d) < 1e-15) {
      if (o < lo[i] || o > hi[i]) return std::nullopt;
      continue;
    }
    double ta = (lo[i] - o) / d;
    double tb = (hi[i] - o) / d;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return std::nullopt;
  }
  return t0;
}

std::optional<double> intersect_sphere(const Ray& ray, double r) {
  const double a = ray.dir.squaredNorm();
  const double b = 2.0 * ray.origin.dot(ray.dir);
  const double c = ray.origin.squaredNorm() - r * r;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  const double s0 = (-b - sq) / (2.0 * a);
  const double s1 = (-b + sq) / (2.0 * a);
  if (s0 > kRayEps) return s0;
  if (s1 > kRayEps) return s1;
  return std::nullopt;
}

std::optional<double> intersect_cylinder(const Ray& ray, double r, double h) {
  double best = std::numeric_limits<double>::infinity();
  const double half = h / 2.0;

  const double a = ray.dir.x() * ray.dir.x() + ray.dir.y() * ray.dir.y();
  const double b = 2.0 * (ray.origin.x() * ray.dir.x() + ray.origin.y() * ray.dir.y());
  const double c = ray.origin.x() * ray.origin.x() + ray.origin.y() * ray.origin.y() - r * r;
  if (a > 1e-15) {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      for (double s : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
        if (s > kRayEps && s < best) {
          const double z = ray.origin.z() + s * ray.dir.z();
          if (std::abs(z) <= half) best = s;
        }
      }
    }
  }
  if (std::abs(ray.dir.z()) > 1e-15) {
    for (double zc : {-half, half}) {
      const double s = (zc - ray.origin.z()) / ray.dir.z();
      if (s > kRayEps && s < best) {
        const double x = ray.origin.x() + s * ray.dir.x();
        const double y = ray.origin.y() + s * ray.dir.y();
        if (x * x + y * y <= r * r) best = s;
      }
    }
  }
  if (!std::isfinite(best)) return std::nullopt;
  return best;
}

// Tab bounds for the asymmetric box: attached to the +x face, confined to the
// (+y, +z) quadrant so every axis-plane reflection is broken.
void asym_tab_bounds(const AsymBoxShape& s, Eigen::Vector3d& lo, Eigen::Vector3d& hi) {
  lo = Eigen::Vector3d(s.w / 2.0, 0.05 * s.h, 0.05 * s.d);
  hi = Eigen::Vector3d(s.w / 2.0 + 0.2 * s.w, 0.45 * s.h, 0.45 * s.d);
}

std::optional<double> intersect_shape(const Shape& shape, const Ray& ray) {
  return std::visit(
      [&](const auto& s) -> std::optional<double> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          const Eigen::Vector3d half(s.w / 2.0, s.h / 2.0, s.d / 2.0);
          return intersect_aabb(ray, -half, half);
        } else if constexpr (std::is_same_v<T, SphereShape>) {
          return intersect_sphere(ray, s.radius);
        } else if constexpr (std::is_same_v<T, CylinderShape>) {
          return intersect_cylinder(ray, s.radius, s.height);
        } else {
          const Eigen::Vector3d half(s.w / 2.0, s.h / 2.0, s.d / 2.0);
          std::optional<double> t = intersect_aabb(ray, -half, half);
          Eigen::Vector3d lo, hi;
          asym_tab_bounds(s, lo, hi);
          const std::optional<double> tt = intersect_aabb(ray, lo, hi);
          if (tt && (!t || *tt < *t)) t = tt;
          return t;
        }
      },
      shape);
}

Eigen::Vector3d shape_half_extents(const Shape& shape) {
  return std::visit(
      [](const auto& s) -> Eigen::Vector3d {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          return {s.w / 2.0, s.h / 2.0, s.d / 2.0};
        } else if constexpr (std::is_same_v<T, SphereShape>) {
          return {s.radius, s.radius, s.radius};
        } else if constexpr (std::is_same_v<T, CylinderShape>) {
          return {s.radius, s.radius, s.height / 2.0};
        } else {
          return {s.w / 2.0 + 0.2 * s.w, s.h / 2.0, s.d / 2.0};
        }
      },
      shape);
}

std::array<std::uint8_t, 3> texture_color(const Texture& texture, const Shape& shape,
                                          const Eigen::Vector3d& p) {
  return std::visit(
      [&](const auto& t) -> std::array<std::uint8_t, 3> {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, CheckerTexture>) {
          const long parity = std::lround(std::floor(p.x() / t.cell)) +
                              std::lround(std::floor(p.y() / t.cell)) +
                              std::lround(std::floor(p.z() / t.cell));
          return (parity % 2 == 0) ? t.color_a : t.color_b;
        } else if constexpr (std::is_same_v<T, AxisGradientTexture>) {
          const Eigen::Vector3d half = shape_half_extents(shape);
          std::array<std::uint8_t, 3> c;
          for (int i = 0; i < 3; ++i) {
            const double x = std::clamp(0.5 + 0.5 * p[i] / half[i], 0.0, 1.0);
            c[i] = static_cast<std::uint8_t>(std::lround(255.0 * x));
          }
          return c;
        } else {
          return t.color;
        }
      },
      texture);
}

// --- surface sampling -------------------------------------------------------

struct Rect {
  Eigen::Vector3d corner;
  Eigen::Vector3d edge_u;
  Eigen::Vector3d edge_v;

  double area() const { return edge_u.norm() * edge_v.norm(); }
};

void sample_rect(const Rect& rect, int k, std::vector<Eigen::Vector3d>& out) {
  if (k <= 0) return;
  const double lu = rect.edge_u.norm();
  const double lv = rect.edge_v.norm();
  const int cols =
      static_cast<int>(std::max(1L, std::lround(std::sqrt(k * lu / std::max(lv, 1e-12)))));
  const int rows = (k + cols - 1) / cols;
  for (int j = 0; j < k; ++j) {
    const int col = j % cols;
    const int row = j / cols;
    const double fu = (col + 0.5) / cols;
    const double fv = (row + 0.5) / rows;
    out.push_back(rect.corner + fu * rect.edge_u + fv * rect.edge_v);
  }
}

std::vector<int> allocate_counts(const std::vector<double>& weights, int total) {
  const double w_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<int> counts(weights.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  int assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = total * weights[i] / w_sum;
    counts[i] = static_cast<int>(exact);
    assigned += counts[i];
    remainders.emplace_back(-(exact - counts[i]), i);
  }
  std::sort(remainders.begin(), remainders.end());
  for (int j = 0; j < total - assigned; ++j) {
    counts[remainders[static_cast<std::size_t>(j) % remainders.size()].second] += 1;
  }
  return counts;
}

std::vector<Rect> box_faces(double w, double h, double d, const Eigen::Vector3d& center) {
  const double hw = w / 2.0, hh = h / 2.0, hd = d / 2.0;
  const Eigen::Vector3d ex(w, 0, 0), ey(0, h, 0), ez(0, 0, d);
  std::vector<Rect> faces;
  faces.push_back({center + Eigen::Vector3d(hw, -hh, -hd), ey, ez});   // +x
  faces.push_back({center + Eigen::Vector3d(-hw, -hh, -hd), ey, ez});  // -x
  faces.push_back({center + Eigen::Vector3d(-hw, hh, -hd), ex, ez});   // +y
  faces.push_back({center + Eigen::Vector3d(-hw, -hh, -hd), ex, ez});  // -y
  faces.push_back({center + Eigen::Vector3d(-hw, -hh, hd), ex, ey});   // +z
  faces.push_back({center + Eigen::Vector3d(-hw, -hh, -hd), ex, ey});  // -z
  return faces;
}

void sample_rect_set(const std::vector<Rect>& rects, int count,
                     std::vector<Eigen::Vector3d>& out) {
  std::vector<double> areas;
  areas.reserve(rects.size());
  for (const Rect& r : rects) areas.push_back(r.area());
  const std::vector<int> counts = allocate_counts(areas, count);
  for (std::size_t i = 0; i < rects.size(); ++i) sample_rect(rects[i], counts[i], out);
}

void sample_disk(double r, double z, int k, std::vector<Eigen::Vector3d>& out) {
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  for (int j = 0; j < k; ++j) {
    const double rho = r * std::sqrt((j + 0.5) / k);
    const double theta = j * golden_angle;
    out.emplace_back(rho * std::cos(theta), rho * std::sin(theta), z);
  }
}

}  // namespace

std::vector<Eigen::Vector3d> sample_surface(const Shape& shape, int count) {
  if (count < 1) {
    throw InvalidInput("surface sample count must be positive");
  }
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(count);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          sample_rect_set(box_faces(s.w, s.h, s.d, Eigen::Vector3d::Zero()), count, pts);
        } else if constexpr (std::is_same_v<T, SphereShape>) {
          const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
          for (int i = 0; i < count; ++i) {
            const double z = 1.0 - (2.0 * i + 1.0) / count;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = i * golden_angle;
            pts.emplace_back(s.radius * r * std::cos(phi), s.radius * r * std::sin(phi),
                             s.radius * z);
          }
        } else if constexpr (std::is_same_v<T, CylinderShape>) {
          const double lateral = 2.0 * M_PI * s.radius * s.height;
          const double cap = M_PI * s.radius * s.radius;
          const std::vector<int> counts = allocate_counts({lateral, cap, cap}, count);
          const int k = counts[0];
          if (k > 0) {
            const int cols = static_cast<int>(std::max(
                1L, std::lround(std::sqrt(k * 2.0 * M_PI * s.radius / s.height))));
            const int rows = (k + cols - 1) / cols;
            for (int j = 0; j < k; ++j) {
              const double theta = 2.0 * M_PI * ((j % cols) + 0.5) / cols;
              const double z = s.height * (((j / cols) + 0.5) / rows - 0.5);
              pts.emplace_back(s.radius * std::cos(theta), s.radius * std::sin(theta), z);
            }
          }
          sample_disk(s.radius, s.height / 2.0, counts[1], pts);
          sample_disk(s.radius, -s.height / 2.0, counts[2], pts);
        } else {
          std::vector<Rect> rects = box_faces(s.w, s.h, s.d, Eigen::Vector3d::Zero());
          Eigen::Vector3d lo, hi;
          asym_tab_bounds(s, lo, hi);
          const Eigen::Vector3d e = hi - lo;
          const Eigen::Vector3d ex(e.x(), 0, 0), ey(0, e.y(), 0), ez(0, 0, e.z());
          // Five exposed tab faces; the -x side is flush with the box.
          rects.push_back({Eigen::Vector3d(hi.x(), lo.y(), lo.z()), ey, ez});
          rects.push_back({Eigen::Vector3d(lo.x(), hi.y(), lo.z()), ex, ez});
          rects.push_back({Eigen::Vector3d(lo.x(), lo.y(), lo.z()), ex, ez});
          rects.push_back({Eigen::Vector3d(lo.x(), lo.y(), hi.z()), ex, ey});
          rects.push_back({Eigen::Vector3d(lo.x(), lo.y(), lo.z()), ex, ey});
          sample_rect_set(rects, count, pts);
        }
      },
      shape);
  return pts;
}

double shape_nominal_diameter(const Shape& shape) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxShape>) {
          return std::sqrt(s.w * s.w + s.h * s.h + s.d * s.d);
        } else if constexpr (std::is_same_v<T, SphereShape>) {
          return 2.0 * s.radius;
        } else if constexpr (std::is_same_v<T, CylinderShape>) {
          return std::sqrt(4.0 * s.radius * s.radius + s.height * s.height);
        } else {
          const double body = std::sqrt(s.w * s.w + s.h * s.h + s.d * s.d);
          const double tab = std::sqrt(1.44 * s.w * s.w + 0.9025 * s.h * s.h +
                                       0.9025 * s.d * s.d);
          return std::max(body, tab);
        }
      },
      shape);
}

void SceneSpec::validate() const {
  camera.validate();
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        bool ok = false;
        if constexpr (std::is_same_v<T, SphereShape>) {
          ok = s.radius > 0.0;
        } else if constexpr (std::is_same_v<T, CylinderShape>) {
          ok = s.radius > 0.0 && s.height > 0.0;
        } else {
          ok = s.w > 0.0 && s.h > 0.0 && s.d > 0.0;
        }
        if (!ok) throw InvalidInput("shape dimensions must be positive");
      },
      shape);
  if (const auto* checker = std::get_if<CheckerTexture>(&texture)) {
    if (!(checker->cell > 0.0)) throw InvalidInput("checker cell must be positive");
  }
  if (!(noise_sigma >= 0.0)) throw InvalidInput("noise sigma must be non-negative");
}

RenderedScene render(const SceneSpec& spec) {
  spec.validate();

  RenderedScene scene{Observation::create(spec.camera.width, spec.camera.height),
                      ModelPoints::create(sample_surface(spec.shape, kModelSamples)),
                      SymmetryPrior{}, spec.object_pose};

  scene.symmetry.plane_axis =
      std::holds_alternative<AsymBoxShape>(spec.shape) ? SymmetryAxis::None : SymmetryAxis::X;
  scene.symmetry.plane_offset = 0.0;
  scene.symmetry.diameter = scene.model.diameter;

  const Eigen::Matrix3d rt = spec.object_pose.rotation.matrix().transpose();
  const Eigen::Vector3d origin_obj = rt * (-spec.object_pose.translation);
  GaussianSampler noise(spec.seed);

  Observation& obs = scene.observation;
  for (int v = 0; v < spec.camera.height; ++v) {
    for (int u = 0; u < spec.camera.width; ++u) {
      const Eigen::Vector3d dir_cam((u - spec.camera.cx) / spec.camera.fx,
                                    (v - spec.camera.cy) / spec.camera.fy, 1.0);
      const Ray ray{origin_obj, rt * dir_cam};
      const std::optional<double> hit = intersect_shape(spec.shape, ray);
      if (!hit) continue;
      double depth = *hit;
      if (spec.noise_sigma > 0.0) {
        depth += spec.noise_sigma * noise.next();
        if (depth <= 1e-6) continue;
      }
      const std::size_t i = obs.index(u, v);
      obs.xyz[i] = depth * dir_cam;
      obs.rgb[i] = texture_color(spec.texture, spec.shape,
                                 ray.origin + (*hit) * ray.dir);
      obs.valid[i] = 1;
    }
  }
  return scene;
}

ScenePair make_pair(const SceneSpec& spec, const Pose& relative) {
  ScenePair pair{render(spec), RenderedScene{Observation{}, ModelPoints{}, SymmetryPrior{},
                                             Pose{}},
                 relative};
  SceneSpec query_spec = spec;
  query_spec.object_pose = relative * spec.object_pose;
  // Independent sensor noise for the second view.
  query_spec.seed = spec.seed * 6364136223846793005ULL + 1442695040888963407ULL;
  pair.query = render(query_spec);
  return pair;
}

}  // namespace pac::synth
