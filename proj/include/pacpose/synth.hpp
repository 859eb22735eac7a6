#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <variant>

#include "pacpose/geometry.hpp"
#include "pacpose/metrics.hpp"
#include "pacpose/observation.hpp"

namespace pac::synth {

// Parametric shapes, all centered at the object-frame origin. Dimensions in
// meters. AsymBox is a box with a tab attached to one corner of its +x face,
// breaking every axis-plane symmetry.
struct BoxShape {
  double w = 0.2, h = 0.15, d = 0.1;
};
struct CylinderShape {
  double radius = 0.05, height = 0.12;  // axis along z
};
struct SphereShape {
  double radius = 0.05;
};
struct AsymBoxShape {
  double w = 0.2, h = 0.15, d = 0.1;
};
using Shape = std::variant<BoxShape, CylinderShape, SphereShape, AsymBoxShape>;

// Textures evaluated on object-frame coordinates, no shading.
struct CheckerTexture {
  double cell = 0.02;  // meters
  std::array<std::uint8_t, 3> color_a = {230, 80, 50};
  std::array<std::uint8_t, 3> color_b = {40, 90, 210};
};
struct AxisGradientTexture {};
struct SolidTexture {
  std::array<std::uint8_t, 3> color = {180, 180, 180};
};
using Texture = std::variant<CheckerTexture, AxisGradientTexture, SolidTexture>;

struct SceneSpec {
  Shape shape;
  Texture texture;
  Pose object_pose;  // object -> camera
  Intrinsics camera;
  double noise_sigma = 0.0;  // additive Gaussian on depth, meters
  std::uint64_t seed = 0;

  void validate() const;
};

struct RenderedScene {
  Observation observation;
  ModelPoints model;      // 4096 object-frame surface samples
  SymmetryPrior symmetry; // the shape's true prior (None for AsymBox)
  Pose pose;              // ground truth, equals spec.object_pose
};

// Analytic per-pixel ray casting (nearest hit). Deterministic for a fixed
// (spec, seed); a camera that misses the object entirely yields an all-invalid
// observation rather than an error.
RenderedScene render(const SceneSpec& spec);

struct ScenePair {
  RenderedScene reference;
  RenderedScene query;
  Pose relative;  // query.pose == relative * reference.pose
};

// Renders the same object under spec.object_pose and relative * object_pose.
// The query render draws its depth noise from a seed derived from spec.seed.
ScenePair make_pair(const SceneSpec& spec, const Pose& relative);

// Exact surface samples of a shape, used directly by render's ModelPoints and
// by geometric test oracles. Count is met exactly.
std::vector<Eigen::Vector3d> sample_surface(const Shape& shape, int count);

double shape_nominal_diameter(const Shape& shape);

}  // namespace pac::synth
