#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pacpose/error.hpp"
#include "pacpose/hypothesis.hpp"
#include "pacpose/projection.hpp"
#include "pacpose/synth.hpp"
#include "test_support.hpp"

using namespace pac;
using testing::Rng;

namespace {

Observation small_checker_scene(const Intrinsics& K, const Pose& pose) {
  synth::SceneSpec spec;
  spec.shape = synth::BoxShape{0.2, 0.15, 0.1};
  spec.texture = synth::CheckerTexture{};
  spec.object_pose = pose;
  spec.camera = K;
  return synth::render(spec).observation;
}

// Reference/query pair around a symmetry plane: the reference camera sees the
// (-x, -y) half of the box, the query camera the (+x, -y) half, so the +x side
// only exists in the reference through its mirror.
struct HalfViewScene {
  synth::SceneSpec ref_spec;
  Pose query_pose;
  std::vector<Eigen::Vector3d> query_visible_obj;
  SymmetryPrior prior;
  double diameter = 0.0;
};

HalfViewScene make_half_view_scene() {
  HalfViewScene scene;
  const Eigen::Vector3d view_ref = Eigen::Vector3d(1.0, 0.35, -0.25).normalized();
  const Rotation spin = Rotation::from_axis_angle(Eigen::Vector3d(0, 0, 1), 150.0 * M_PI / 180.0);
  const Eigen::Vector3d view_query = spin * view_ref;

  const Pose ref_pose{rotation_from_direction(view_ref).inverse(),
                      Eigen::Vector3d(0, 0, 0.85)};
  scene.query_pose = Pose{rotation_from_direction(view_query).inverse(),
                          Eigen::Vector3d(0, 0, 0.85)};

  scene.ref_spec.shape = synth::BoxShape{0.13, 0.13, 0.13};
  scene.ref_spec.texture = synth::CheckerTexture{};
  scene.ref_spec.object_pose = ref_pose;
  scene.ref_spec.camera = testing::test_camera(160, 260.0);

  synth::SceneSpec query_spec = scene.ref_spec;
  query_spec.object_pose = scene.query_pose;
  const synth::RenderedScene query = synth::render(query_spec);
  scene.query_visible_obj =
      testing::observed_object_points(query.observation, scene.query_pose);
  scene.prior = SymmetryPrior{SymmetryAxis::X, 0.0, query.model.diameter};
  scene.diameter = query.model.diameter;
  return scene;
}

std::vector<Eigen::Vector3d> to_object_frame(const std::vector<RefPoint>& pts,
                                             const Pose& pose, bool mirrored_only,
                                             bool originals_only) {
  const Eigen::Matrix3d rt = pose.rotation.matrix().transpose();
  std::vector<Eigen::Vector3d> out;
  for (const RefPoint& p : pts) {
    if (mirrored_only && !p.mirrored) continue;
    if (originals_only && p.mirrored) continue;
    out.push_back(rt * (p.position - pose.translation));
  }
  return out;
}

}  // namespace

TEST_CASE("mirror_fuse cardinality and structure") {
  const Intrinsics K = testing::test_camera(96, 140.0);
  const Pose pose = testing::tilted_pose(0.5, 0.4, 0.8);
  const Observation obs = small_checker_scene(K, pose);
  const int n_valid = obs.valid_count();
  REQUIRE(n_valid > 100);

  SUBCASE("no plane: pass-through only") {
    const AugmentedReference aug =
        mirror_fuse(obs, pose, SymmetryPrior{SymmetryAxis::None, 0.0, 0.1});
    CHECK(aug.points.size() == static_cast<std::size_t>(n_valid));
    CHECK(aug.source_count == aug.points.size());
    for (const RefPoint& p : aug.points) CHECK_FALSE(p.mirrored);
  }

  SUBCASE("plane doubles the set; mirrors reflect exactly in the object frame") {
    const SymmetryPrior prior{SymmetryAxis::X, 0.0, 0.1};
    const AugmentedReference aug = mirror_fuse(obs, pose, prior);
    REQUIRE(aug.points.size() == static_cast<std::size_t>(2 * n_valid));
    REQUIRE(aug.source_count == static_cast<std::size_t>(n_valid));

    const Eigen::Matrix3d rt = pose.rotation.matrix().transpose();
    for (std::size_t k = 0; k < aug.source_count; ++k) {
      const RefPoint& src = aug.points[k];
      const RefPoint& mir = aug.points[k + aug.source_count];
      CHECK_FALSE(src.mirrored);
      CHECK(mir.mirrored);
      const Eigen::Vector3d src_obj = rt * (src.position - pose.translation);
      const Eigen::Vector3d mir_obj = rt * (mir.position - pose.translation);
      CHECK((reflect_point(src_obj, prior) - mir_obj).norm() <= 1e-9);
      // Grayscale proxy color.
      CHECK(mir.color[0] == mir.color[1]);
      CHECK(mir.color[1] == mir.color[2]);
      CHECK(mir.prior_weight == src.prior_weight);
    }
  }
}

TEST_CASE("mirror fusion completes the unseen half of a box") {
  const HalfViewScene scene = make_half_view_scene();
  REQUIRE(scene.query_visible_obj.size() > 500);

  const synth::RenderedScene ref = synth::render(scene.ref_spec);
  const AugmentedReference with_fusion =
      mirror_fuse(ref.observation, scene.ref_spec.object_pose, scene.prior);
  const AugmentedReference without_fusion = mirror_fuse(
      ref.observation, scene.ref_spec.object_pose,
      SymmetryPrior{SymmetryAxis::None, 0.0, scene.prior.diameter});

  const auto aug_obj =
      to_object_frame(with_fusion.points, scene.ref_spec.object_pose, false, false);
  const auto plain_obj =
      to_object_frame(without_fusion.points, scene.ref_spec.object_pose, false, false);

  const double h_with = testing::directed_hausdorff(scene.query_visible_obj, aug_obj);
  const double h_without = testing::directed_hausdorff(scene.query_visible_obj, plain_obj);

  CHECK(h_with < 0.2 * scene.diameter);
  CHECK(h_without > 0.4 * scene.diameter);
}

TEST_CASE("transform_to_hypothesis follows the relative-pose formula") {
  Rng rng(301);
  const Intrinsics K = testing::test_camera(64, 90.0);
  const Pose scene_pose = testing::tilted_pose(0.4, 0.2, 0.7);
  const Observation obs = small_checker_scene(K, scene_pose);
  const AugmentedReference aug =
      mirror_fuse(obs, scene_pose, SymmetryPrior{SymmetryAxis::None, 0.0, 0.1});
  REQUIRE(aug.points.size() > 50);

  SUBCASE("identity relative transform") {
    const auto out = transform_to_hypothesis(aug, scene_pose, scene_pose);
    for (std::size_t i = 0; i < aug.points.size(); ++i) {
      CHECK((out[i].position - aug.points[i].position).norm() <= 1e-9);
    }
  }

  SUBCASE("pure translation from an identity reference") {
    const Pose ident;
    const Eigen::Vector3d shift(0.05, -0.02, 0.3);
    const auto out = transform_to_hypothesis(aug, ident, Pose{Rotation(), shift});
    for (std::size_t i = 0; i < aug.points.size(); ++i) {
      CHECK((out[i].position - (aug.points[i].position + shift)).norm() <= 1e-12);
    }
  }

  SUBCASE("random poses match a step-by-step second path") {
    for (int trial = 0; trial < 20; ++trial) {
      const Pose ref{rng.rotation(), Eigen::Vector3d(rng.uniform(-0.5, 0.5),
                                                     rng.uniform(-0.5, 0.5),
                                                     rng.uniform(0.5, 1.5))};
      const Pose hyp{rng.rotation(), Eigen::Vector3d(rng.uniform(-0.5, 0.5),
                                                     rng.uniform(-0.5, 0.5),
                                                     rng.uniform(0.5, 1.5))};
      const auto out = transform_to_hypothesis(aug, ref, hyp);
      for (std::size_t i = 0; i < aug.points.size(); i += 7) {
        const Eigen::Vector3d obj =
            ref.rotation.matrix().transpose() * (aug.points[i].position - ref.translation);
        const Eigen::Vector3d expected = hyp.rotation.matrix() * obj + hyp.translation;
        CHECK((out[i].position - expected).norm() <= 1e-12);
        CHECK(out[i].color == aug.points[i].color);
        CHECK(out[i].prior_weight == aug.points[i].prior_weight);
      }
    }
  }
}

TEST_CASE("splat single point fills its 3x3 block") {
  const Intrinsics K = testing::test_camera(64, 90.0);
  SplatConfig cfg;
  std::vector<TransformedPoint> pts{{Eigen::Vector3d(0, 0, 1), {10, 20, 30}, 0.5}};
  const ProjectionResult r = splat(pts, K, cfg);
  CHECK(r.valid_count() == 9);
  for (int dv = -1; dv <= 1; ++dv) {
    for (int du = -1; du <= 1; ++du) {
      const std::size_t i = r.index(32 + du, 32 + dv);
      CHECK(r.valid[i]);
      CHECK(r.winner[i] == 0);
      CHECK(r.rgb[i] == std::array<std::uint8_t, 3>{10, 20, 30});
      CHECK(r.prior[i] == 0.5);
    }
  }
}

TEST_CASE("splat depth ordering on a shared ray") {
  const Intrinsics K = testing::test_camera(64, 90.0);
  SplatConfig cfg;
  cfg.kernel_weight = 0.0;
  std::vector<TransformedPoint> pts{{Eigen::Vector3d(0, 0, 1.0), {1, 1, 1}, 1.0},
                                    {Eigen::Vector3d(0, 0, 0.9), {2, 2, 2}, 1.0}};
  const ProjectionResult r = splat(pts, K, cfg);
  CHECK(r.winner[r.index(32, 32)] == 1);
  CHECK(r.xyz[r.index(32, 32)].z() == doctest::Approx(0.9));
}

TEST_CASE("splat skips points behind the camera and off the image") {
  const Intrinsics K = testing::test_camera(64, 90.0);
  std::vector<TransformedPoint> pts{{Eigen::Vector3d(0, 0, -1.0), {0, 0, 0}, 1.0},
                                    {Eigen::Vector3d(50.0, 0, 0.1), {0, 0, 0}, 1.0}};
  const ProjectionResult r = splat(pts, K, SplatConfig{});
  CHECK(r.valid_count() == 0);

  const ProjectionResult empty = splat({}, K, SplatConfig{});
  CHECK(empty.valid_count() == 0);
}

TEST_CASE("splat equals the exhaustive competition oracle") {
  const Intrinsics K = testing::test_camera(64, 90.0);
  Rng rng(302);
  for (int trial = 0; trial < 20; ++trial) {
    SplatConfig cfg;
    cfg.kernel_weight = (trial % 2 == 0) ? 0.002 : 0.0;
    std::vector<TransformedPoint> pts;
    const int n = rng.uniform_int(1, 200);
    for (int i = 0; i < n; ++i) {
      // Include duplicates-on-ray and off-image points.
      pts.push_back(TransformedPoint{
          Eigen::Vector3d(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                          rng.uniform(0.2, 2.5)),
          {static_cast<std::uint8_t>(rng.uniform_int(0, 255)), 0, 0},
          rng.uniform01()});
    }
    const ProjectionResult r = splat(pts, K, cfg);
    const auto oracle = testing::oracle_splat_winners(pts, K, cfg);
    REQUIRE(oracle.size() == r.winner.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      CHECK(r.winner[i] == oracle[i]);
    }
  }
}

TEST_CASE("splat winners are permutation invariant as points") {
  const Intrinsics K = testing::test_camera(64, 90.0);
  Rng rng(303);
  std::vector<TransformedPoint> pts;
  for (int i = 0; i < 300; ++i) {
    pts.push_back(TransformedPoint{
        Eigen::Vector3d(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4),
                        rng.uniform(0.3, 2.0) + rng.uniform01() * 1e-9),
        {static_cast<std::uint8_t>(i % 256), 0, 0},
        rng.uniform01()});
  }
  std::vector<TransformedPoint> shuffled = pts;
  for (std::size_t i = shuffled.size(); i > 1; --i) {
    std::swap(shuffled[i - 1], shuffled[rng.next_u64() % i]);
  }
  const ProjectionResult a = splat(pts, K, SplatConfig{});
  const ProjectionResult b = splat(shuffled, K, SplatConfig{});
  for (std::size_t i = 0; i < a.valid.size(); ++i) {
    CHECK(a.valid[i] == b.valid[i]);
    if (a.valid[i]) {
      CHECK((a.xyz[i] - b.xyz[i]).norm() == 0.0);  // same winning point
      CHECK(a.rgb[i] == b.rgb[i]);
      CHECK(a.prior[i] == b.prior[i]);
    }
  }
}

TEST_CASE("occlusion: the nearer of two parallel planes wins everywhere they overlap") {
  const Intrinsics K = testing::test_camera(64, 90.0);
  std::vector<TransformedPoint> pts;
  std::vector<bool> is_near;
  for (int v = 16; v < 48; ++v) {
    for (int u = 16; u < 48; ++u) {
      pts.push_back(TransformedPoint{backproject(1.0, u, v, K), {1, 1, 1}, 1.0});
      is_near.push_back(false);
    }
  }
  for (int v = 24; v < 40; ++v) {
    for (int u = 24; u < 40; ++u) {
      pts.push_back(TransformedPoint{backproject(0.8, u, v, K), {2, 2, 2}, 1.0});
      is_near.push_back(true);
    }
  }
  const ProjectionResult r = splat(pts, K, SplatConfig{});
  for (int v = 24; v < 40; ++v) {
    for (int u = 24; u < 40; ++u) {
      const std::size_t i = r.index(u, v);
      REQUIRE(r.valid[i]);
      CHECK(is_near[static_cast<std::size_t>(r.winner[i])]);
    }
  }
}

TEST_CASE("project reproduces the source exactly under its own pose") {
  const Intrinsics K = testing::test_camera(128, 170.0);
  Rng rng(304);
  for (int trial = 0; trial < 5; ++trial) {
    const Pose pose = testing::tilted_pose(rng.uniform(0.0, 0.9), rng.uniform(0.0, 6.28),
                                           rng.uniform(0.7, 1.1));
    const Observation obs = small_checker_scene(K, pose);
    REQUIRE(obs.valid_count() > 200);

    SplatConfig cfg;
    cfg.kernel_weight = 0.0;
    const SymmetryPrior none{SymmetryAxis::None, 0.0, 0.1};
    const ProjectionResult r = project(obs, pose, pose, none, K, cfg);

    int co_valid = 0;
    for (int v = 0; v < K.height; ++v) {
      for (int u = 0; u < K.width; ++u) {
        const std::size_t i = obs.index(u, v);
        if (!obs.valid[i] || !r.valid[i]) continue;
        ++co_valid;
        CHECK(std::abs(r.xyz[i].z() - obs.xyz[i].z()) <= 1e-6);
        CHECK(r.rgb[i] == obs.rgb[i]);
      }
    }
    CHECK(co_valid >= static_cast<int>(0.99 * obs.valid_count()));
  }
}

TEST_CASE("project: prior channel rides with the winner") {
  const Intrinsics K = testing::test_camera(96, 140.0);
  const Pose pose = testing::tilted_pose(0.3, 0.9, 0.8);
  Observation obs = small_checker_scene(K, pose);
  obs.prior.resize(obs.pixel_count(), 0.0);
  Rng rng(305);
  for (std::size_t i = 0; i < obs.pixel_count(); ++i) obs.prior[i] = rng.uniform01();

  const SymmetryPrior prior{SymmetryAxis::X, 0.0, 0.26};
  const Pose hyp = testing::tilted_pose(0.1, 2.2, 0.82);

  const AugmentedReference aug = mirror_fuse(obs, pose, prior);
  const auto transformed = transform_to_hypothesis(aug, pose, hyp);
  const ProjectionResult r = splat(transformed, K, SplatConfig{});

  int checked = 0;
  for (std::size_t i = 0; i < r.valid.size(); ++i) {
    if (!r.valid[i]) continue;
    const auto& p = transformed[static_cast<std::size_t>(r.winner[i])];
    CHECK(r.prior[i] == p.prior_weight);
    CHECK((r.xyz[i] - p.position).norm() == 0.0);
    CHECK(r.rgb[i] == p.color);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("projection of a flipped symmetric box matches the identity projection") {
  // Box tilted about y so the camera sees the -z and +x faces; the x-plane
  // mirror covers the -x side. A half-turn about the object's z axis then maps
  // the augmented set onto itself, so both projections agree as depth maps.
  const Intrinsics K = testing::test_camera(128, 170.0);
  synth::SceneSpec spec;
  spec.shape = synth::BoxShape{0.18, 0.13, 0.1};
  spec.texture = synth::CheckerTexture{};
  spec.object_pose = Pose{Rotation::from_axis_angle(Eigen::Vector3d(0, 1, 0), 0.5),
                          Eigen::Vector3d(0, 0, 0.9)};
  spec.camera = K;
  const synth::RenderedScene scene = synth::render(spec);

  const SymmetryPrior prior{SymmetryAxis::X, 0.0, scene.model.diameter};
  const Rotation half_turn = Rotation::from_axis_angle(Eigen::Vector3d(0, 0, 1), M_PI);
  const Pose flipped{spec.object_pose.rotation * half_turn, spec.object_pose.translation};

  const ProjectionResult base =
      project(scene.observation, spec.object_pose, spec.object_pose, prior, K, SplatConfig{});
  const ProjectionResult flip =
      project(scene.observation, spec.object_pose, flipped, prior, K, SplatConfig{});

  // Depth comparison with a 2 px reassignment allowance.
  std::vector<double> residuals;
  for (int v = 0; v < K.height; ++v) {
    for (int u = 0; u < K.width; ++u) {
      if (!base.valid[base.index(u, v)]) continue;
      const double z0 = base.xyz[base.index(u, v)].z();
      double best = std::numeric_limits<double>::infinity();
      for (int dv = -2; dv <= 2; ++dv) {
        for (int du = -2; du <= 2; ++du) {
          const int uu = u + du;
          const int vv = v + dv;
          if (uu < 0 || uu >= K.width || vv < 0 || vv >= K.height) continue;
          const std::size_t j = flip.index(uu, vv);
          if (!flip.valid[j]) continue;
          best = std::min(best, std::abs(flip.xyz[j].z() - z0));
        }
      }
      if (std::isfinite(best)) residuals.push_back(best);
    }
  }
  REQUIRE(residuals.size() > 500);
  std::nth_element(residuals.begin(), residuals.begin() + residuals.size() / 2,
                   residuals.end());
  CHECK(residuals[residuals.size() / 2] < 0.005);
}

TEST_CASE("splat config validation") {
  SplatConfig bad_center;
  bad_center.kernel[4] = 0.5;  // center offset must stay zero
  CHECK_THROWS_AS(bad_center.validate(), InvalidInput);

  SplatConfig asym;
  asym.kernel[0] = 2.0;  // breaks symmetry under negation
  CHECK_THROWS_AS(asym.validate(), InvalidInput);

  SplatConfig negative;
  negative.kernel_weight = -0.1;
  CHECK_THROWS_AS(negative.validate(), InvalidInput);
}
