#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <json.hpp>

#include "pacpose/score.hpp"

namespace pac {

// Every runtime knob of the estimation pipeline. Serialized verbatim into
// each report so runs are reproducible from their own output.
struct RunConfig {
  int n_viewpoints = 42;
  int n_inplane = 6;
  double tau = 0.38;  // with 42x6 sampling this retains 78 hypotheses
  Eigen::Vector3d gravity_up{0.0, 0.0, 1.0};
  int iterations = 3;
  double delta = 0.002;  // splat kernel weight, meters
  ScoreWeights score_weights;
  double max_corr_factor = 0.1;  // correspondence gate as a fraction of diameter
  int min_correspondences = 20;
  bool use_prior_weights = true;
  int parallelism = 0;  // 0 = hardware concurrency
  std::uint64_t seed = 0;

  void validate() const;
};

nlohmann::json run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const nlohmann::json& j);

}  // namespace pac
