#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "pacpose/geometry.hpp"
#include "pacpose/run_config.hpp"
#include "pacpose/score.hpp"

namespace pac {

struct StageTimings {
  double init_ms = 0.0;
  double projection_ms = 0.0;
  double refine_ms = 0.0;
  double score_ms = 0.0;
};

struct TrialResult {
  std::string name;
  int n_hypotheses = 0;
  double tau = 0.0;
  std::string ref_hash;
  std::string query_hash;
  std::size_t selected_index = 0;
  Pose selected_pose;
  ScoreBreakdown selected_score;
  std::vector<Pose> iteration_poses;  // selected hypothesis after each iteration
  bool symmetric = false;
  std::optional<double> diameter;
  std::optional<double> add;
  std::optional<double> add_s;
  StageTimings timings;
  bool failed = false;
  std::string failure;

  // The error used for aggregate accuracy: closest-vertex for symmetric
  // objects, plain otherwise.
  std::optional<double> eval_error() const {
    return symmetric ? add_s : add;
  }
};

struct AggregateResult {
  int n_trials = 0;
  int n_evaluated = 0;  // trials with ground truth metrics
  std::optional<double> add01_percent;
  std::optional<double> auc_value;  // thresholds 0 to 0.1 m
  StageTimings mean_ms;
};

struct RunReport {
  RunConfig config;
  std::vector<TrialResult> trials;
  AggregateResult aggregate;
};

AggregateResult compute_aggregate(const std::vector<TrialResult>& trials);

// include_timings = false omits every wall-time field, leaving a byte-stable
// document for determinism comparisons.
nlohmann::json report_to_json(const RunReport& report, bool include_timings = true);
RunReport report_from_json(const nlohmann::json& j);

std::string report_to_string(const RunReport& report, bool include_timings = true);

}  // namespace pac
