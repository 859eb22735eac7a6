#include "pacpose/pipeline.hpp"

#include <chrono>
#include <vector>

#include "pacpose/error.hpp"
#include "pacpose/hypothesis.hpp"
#include "pacpose/parallel.hpp"
#include "pacpose/projection.hpp"
#include "pacpose/refine.hpp"
#include "pacpose/score.hpp"

namespace pac {

namespace {

using clock = std::chrono::steady_clock;

double ms_between(clock::time_point a, clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

}  // namespace

TrialResult estimate_pose(const SceneBundle& reference, const SceneBundle& query,
                          const RunConfig& cfg, const std::string& name,
                          const std::optional<TrialTruth>& truth) {
  cfg.validate();
  if (!reference.pose) {
    throw InvalidInput("reference bundle carries no pose");
  }
  const SymmetryPrior& prior = reference.symmetry;

  TrialResult trial;
  trial.name = name;
  trial.tau = cfg.tau;

  // Initialization: shared translation plus pruned rotation set.
  const auto t_init0 = clock::now();
  RotationSamplingConfig sampling;
  sampling.n_viewpoints = cfg.n_viewpoints;
  sampling.n_inplane = cfg.n_inplane;
  sampling.gravity_up = cfg.gravity_up;
  sampling.tau = cfg.tau;
  const HypothesisSet hypotheses =
      initialize(query.observation, query.intrinsics, prior, sampling);
  trial.n_hypotheses = static_cast<int>(hypotheses.size());
  trial.timings.init_ms = ms_between(t_init0, clock::now());

  SplatConfig splat_cfg;
  splat_cfg.kernel_weight = cfg.delta;

  RefineConfig refine_cfg;
  refine_cfg.iterations = cfg.iterations;
  refine_cfg.max_correspondence_dist = cfg.max_corr_factor * prior.diameter;
  refine_cfg.min_correspondences = cfg.min_correspondences;
  refine_cfg.use_prior_weights = cfg.use_prior_weights;

  const auto t_fuse0 = clock::now();
  const AugmentedReference aug =
      mirror_fuse(reference.observation, *reference.pose, prior);
  const double fuse_ms = ms_between(t_fuse0, clock::now());

  struct PerHypothesis {
    RefineResult refined;
    ScoreBreakdown score;
    RefineTimings refine_timings;
    double final_projection_ms = 0.0;
    double score_ms = 0.0;
  };
  std::vector<PerHypothesis> results(hypotheses.size());

  parallel_for(hypotheses.size(), cfg.parallelism, [&](std::size_t i) {
    PerHypothesis& out = results[i];
    out.refined =
        refine_hypothesis_fused(hypotheses.poses[i], aug, *reference.pose,
                                query.observation, query.intrinsics, splat_cfg,
                                refine_cfg, &out.refine_timings);
    const auto t0 = clock::now();
    const ProjectionResult proj = splat(
        transform_to_hypothesis(aug, *reference.pose, out.refined.pose),
        query.intrinsics, splat_cfg);
    const auto t1 = clock::now();
    out.score = score_hypothesis(proj, query.observation, prior, cfg.score_weights);
    const auto t2 = clock::now();
    out.final_projection_ms = ms_between(t0, t1);
    out.score_ms = ms_between(t1, t2);
  });

  trial.timings.projection_ms = fuse_ms;
  for (const PerHypothesis& r : results) {
    trial.timings.projection_ms += r.refine_timings.projection_ms + r.final_projection_ms;
    trial.timings.refine_ms += r.refine_timings.update_ms;
    trial.timings.score_ms += r.score_ms;
  }

  std::vector<Pose> refined_poses(results.size());
  std::vector<ScoreBreakdown> scores(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    refined_poses[i] = results[i].refined.pose;
    scores[i] = results[i].score;
  }
  const SelectionResult selection = select(refined_poses, scores);

  trial.selected_index = selection.index;
  trial.selected_pose = selection.best;
  trial.selected_score = scores[selection.index];
  for (const RefineIteration& it : results[selection.index].refined.history) {
    trial.iteration_poses.push_back(it.pose);
  }
  trial.symmetric = prior.has_plane();

  if (truth) {
    trial.diameter = truth->model.diameter;
    trial.add = add_error(trial.selected_pose, truth->query_pose, truth->model);
    trial.add_s = add_s_error(trial.selected_pose, truth->query_pose, truth->model);
  }
  return trial;
}

}  // namespace pac
