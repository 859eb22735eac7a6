#pragma once

#include <optional>
#include <string>

#include "pacpose/bundle_io.hpp"
#include "pacpose/metrics.hpp"
#include "pacpose/report.hpp"
#include "pacpose/run_config.hpp"

namespace pac {

// Ground truth attached to a trial for evaluation; the pipeline itself never
// reads it when choosing a pose.
struct TrialTruth {
  Pose query_pose;
  ModelPoints model;
};

// Full estimation pass: hypothesis initialization, per-hypothesis iterative
// refinement, scoring of the refined set, and selection. Hypothesis work is
// an index-ordered parallel map, so results are identical at any parallelism
// degree. Throws NoObservation / EmptyHypothesisSet when initialization has
// nothing to work with.
TrialResult estimate_pose(const SceneBundle& reference, const SceneBundle& query,
                          const RunConfig& cfg, const std::string& name,
                          const std::optional<TrialTruth>& truth = std::nullopt);

}  // namespace pac
