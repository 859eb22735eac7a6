#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pacpose/error.hpp"
#include "pacpose/projection.hpp"
#include "pacpose/score.hpp"
#include "pacpose/synth.hpp"
#include "test_support.hpp"

using namespace pac;
using testing::Rng;

namespace {

synth::RenderedScene quick_scene(const Pose& pose, std::uint64_t seed = 0) {
  synth::SceneSpec spec;
  spec.shape = synth::BoxShape{0.2, 0.16, 0.12};
  spec.texture = synth::CheckerTexture{0.03, {220, 50, 60}, {30, 200, 90}};
  spec.object_pose = pose;
  spec.camera = testing::test_camera(128, 200.0);
  spec.seed = seed;
  return synth::render(spec);
}

}  // namespace

TEST_CASE("perfect consistency scores 1 in every term") {
  const Pose pose = testing::tilted_pose(0.3, 0.8, 0.85);
  const synth::RenderedScene scene = quick_scene(pose);
  const Intrinsics K = testing::test_camera(128, 200.0);
  const SymmetryPrior none{SymmetryAxis::None, 0.0, scene.model.diameter};

  const ProjectionResult proj =
      project(scene.observation, pose, pose, none, K, SplatConfig{});
  const ScoreBreakdown s = score_hypothesis(proj, scene.observation, none);
  CHECK(s.depth_term == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.photo_term == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.coverage == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.total == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(s.no_overlap);
}

TEST_CASE("zero overlap is the legal worst score") {
  const Intrinsics K = testing::test_camera(64, 90.0);
  ProjectionResult proj = ProjectionResult::create(64, 64);
  proj.valid[proj.index(5, 5)] = 1;
  proj.xyz[proj.index(5, 5)] = Eigen::Vector3d(0, 0, 1);
  proj.prior[proj.index(5, 5)] = 1.0;

  Observation query = Observation::create(64, 64);
  query.xyz[query.index(50, 50)] = backproject(1.0, 50, 50, K);
  query.valid[query.index(50, 50)] = 1;

  const SymmetryPrior prior{SymmetryAxis::None, 0.0, 0.2};
  const ScoreBreakdown s = score_hypothesis(proj, query, prior);
  CHECK(s.total == 0.0);
  CHECK(s.no_overlap);
}

TEST_CASE("truth outscores a quarter-turned hypothesis") {
  const Pose truth = testing::tilted_pose(0.4, 0.6, 0.85);
  const synth::RenderedScene scene = quick_scene(truth);
  const Intrinsics K = testing::test_camera(128, 200.0);
  const SymmetryPrior none{SymmetryAxis::None, 0.0, scene.model.diameter};

  const Pose wrong{Rotation::from_axis_angle(Eigen::Vector3d(1, 0, 0), M_PI / 2) *
                       truth.rotation,
                   truth.translation};
  const ScoreBreakdown s_truth = score_hypothesis(
      project(scene.observation, truth, truth, none, K, SplatConfig{}), scene.observation,
      none);
  const ScoreBreakdown s_wrong = score_hypothesis(
      project(scene.observation, truth, wrong, none, K, SplatConfig{}), scene.observation,
      none);
  CHECK(s_truth.total > s_wrong.total);
}

TEST_CASE("score terms stay within [0,1] on fuzzed inputs") {
  Rng rng(501);
  const SymmetryPrior prior{SymmetryAxis::None, 0.0, 0.15};
  for (int trial = 0; trial < 50; ++trial) {
    const int size = 24;
    ProjectionResult proj = ProjectionResult::create(size, size);
    Observation query = Observation::create(size, size);
    query.prior.assign(query.pixel_count(), 0.0);
    for (int i = 0; i < size * size; ++i) {
      if (rng.uniform01() < 0.4) {
        proj.valid[i] = 1;
        proj.xyz[i] = Eigen::Vector3d(rng.uniform(-1, 1), rng.uniform(-1, 1),
                                      rng.uniform(0.1, 3.0));
        proj.rgb[i] = {static_cast<std::uint8_t>(rng.uniform_int(0, 255)),
                       static_cast<std::uint8_t>(rng.uniform_int(0, 255)),
                       static_cast<std::uint8_t>(rng.uniform_int(0, 255))};
        proj.prior[i] = rng.uniform01();
      }
      if (rng.uniform01() < 0.4) {
        query.valid[i] = 1;
        query.xyz[i] = Eigen::Vector3d(rng.uniform(-1, 1), rng.uniform(-1, 1),
                                       rng.uniform(0.1, 3.0));
        query.rgb[i] = {static_cast<std::uint8_t>(rng.uniform_int(0, 255)),
                        static_cast<std::uint8_t>(rng.uniform_int(0, 255)),
                        static_cast<std::uint8_t>(rng.uniform_int(0, 255))};
        query.prior[i] = rng.uniform01();
      }
    }
    const ScoreBreakdown s = score_hypothesis(proj, query, prior);
    CHECK(s.depth_term >= 0.0);
    CHECK(s.depth_term <= 1.0);
    CHECK(s.photo_term >= 0.0);
    CHECK(s.photo_term <= 1.0);
    CHECK(s.coverage >= 0.0);
    CHECK(s.coverage <= 1.0);
    CHECK(s.total >= 0.0);
    CHECK(s.total <= 1.0);
  }
}

TEST_CASE("select basics") {
  std::vector<Pose> poses(3);
  poses[1].translation = Eigen::Vector3d(1, 2, 3);

  std::vector<ScoreBreakdown> scores(3);
  scores[0].total = 0.2;
  scores[1].total = 0.9;
  scores[2].total = 0.9;

  const SelectionResult r = select(poses, scores);
  CHECK(r.index == 1);  // tie broken by lower index
  CHECK(r.best.translation == poses[1].translation);
  REQUIRE(r.ranking.size() == 3);
  CHECK(r.ranking[0] == 1);
  CHECK(r.ranking[1] == 2);
  CHECK(r.ranking[2] == 0);

  const SelectionResult single = select({poses[0]}, {scores[0]});
  CHECK(single.index == 0);

  CHECK_THROWS_AS(select({}, {}), EmptyHypothesisSet);
}

TEST_CASE("ranking is invariant under positive scaling of totals") {
  Rng rng(502);
  std::vector<Pose> poses(8);
  std::vector<ScoreBreakdown> scores(8);
  for (auto& s : scores) s.total = rng.uniform01();
  const auto base = select(poses, scores);
  for (auto& s : scores) s.total *= 3.7;
  const auto scaled = select(poses, scores);
  CHECK(base.ranking == scaled.ranking);
  CHECK(base.index == scaled.index);
}

TEST_CASE("ground truth ranks first among rotated decoys") {
  Rng rng(503);
  const Intrinsics K = testing::test_camera(128, 200.0);
  int wins = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    const Pose truth = testing::tilted_pose(rng.uniform(0.1, 0.6), rng.uniform(0.0, 6.28),
                                            rng.uniform(0.8, 0.95));
    const synth::RenderedScene scene = quick_scene(truth, trial);
    const SymmetryPrior none{SymmetryAxis::None, 0.0, scene.model.diameter};

    std::vector<double> totals;
    for (int cand = 0; cand < 4; ++cand) {
      Pose pose = truth;
      if (cand > 0) {
        pose.rotation =
            Rotation::from_axis_angle(rng.unit_vector(), 30.0 * M_PI / 180.0) *
            truth.rotation;
      }
      const ScoreBreakdown s = score_hypothesis(
          project(scene.observation, truth, pose, none, K, SplatConfig{}),
          scene.observation, none);
      totals.push_back(s.total);
    }
    bool truth_first = true;
    for (std::size_t i = 1; i < totals.size(); ++i) {
      if (totals[i] >= totals[0]) truth_first = false;
    }
    wins += truth_first;
  }
  CHECK(wins >= 95);
}

TEST_CASE("score weight validation") {
  ScoreWeights bad{0.5, 0.2, 0.2};
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  ScoreWeights negative{-0.1, 0.6, 0.5};
  CHECK_THROWS_AS(negative.validate(), InvalidInput);
}
