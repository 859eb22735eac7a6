#include "pacpose/observation.hpp"

#include <cmath>

#include "pacpose/error.hpp"

namespace pac {

Observation Observation::create(int width, int height) {
  if (width <= 0 || height <= 0) {
    throw InvalidInput("observation dimensions must be positive");
  }
  Observation obs;
  obs.width = width;
  obs.height = height;
  const std::size_t n = static_cast<std::size_t>(width) * height;
  obs.rgb.assign(n, {0, 0, 0});
  obs.xyz.assign(n, Eigen::Vector3d::Zero());
  obs.valid.assign(n, 0);
  return obs;
}

int Observation::valid_count() const {
  int n = 0;
  for (std::uint8_t v : valid) n += (v != 0);
  return n;
}

void validate_observation(const Observation& obs, const Intrinsics& K) {
  if (obs.width != K.width || obs.height != K.height) {
    throw InvalidInput("observation dimensions disagree with intrinsics");
  }
  const std::size_t n = static_cast<std::size_t>(obs.width) * obs.height;
  if (obs.rgb.size() != n || obs.xyz.size() != n || obs.valid.size() != n) {
    throw InvalidInput("observation channel sizes disagree");
  }
  if (obs.has_prior() && obs.prior.size() != n) {
    throw InvalidInput("prior channel size disagrees");
  }
  for (int v = 0; v < obs.height; ++v) {
    for (int u = 0; u < obs.width; ++u) {
      const std::size_t i = obs.index(u, v);
      if (obs.valid[i]) {
        const Eigen::Vector3d& p = obs.xyz[i];
        if (!(p.z() > 0.0)) {
          throw InvalidInput("valid pixel with non-positive depth");
        }
        const double du = K.fx * p.x() / p.z() + K.cx - u;
        const double dv = K.fy * p.y() / p.z() + K.cy - v;
        if (std::abs(du) > 0.5 || std::abs(dv) > 0.5) {
          throw InvalidInput("valid pixel fails back-projection consistency");
        }
      }
      if (obs.has_prior()) {
        const double w = obs.prior[i];
        if (!(w >= 0.0 && w <= 1.0)) {
          throw InvalidInput("prior weight outside [0, 1]");
        }
      }
    }
  }
}

Eigen::Vector3d reflect_point(const Eigen::Vector3d& p, const SymmetryPrior& prior) {
  Eigen::Vector3d out = p;
  switch (prior.plane_axis) {
    case SymmetryAxis::X:
      out.x() = 2.0 * prior.plane_offset - p.x();
      break;
    case SymmetryAxis::Y:
      out.y() = 2.0 * prior.plane_offset - p.y();
      break;
    case SymmetryAxis::Z:
      out.z() = 2.0 * prior.plane_offset - p.z();
      break;
    case SymmetryAxis::None:
      throw InvalidInput("reflect_point requires a symmetry plane");
  }
  return out;
}

}  // namespace pac
