#include "pacpose/report.hpp"

#include <cmath>

#include "pacpose/error.hpp"
#include "pacpose/json_convert.hpp"
#include "pacpose/metrics.hpp"

namespace pac {

using nlohmann::json;

AggregateResult compute_aggregate(const std::vector<TrialResult>& trials) {
  AggregateResult agg;
  agg.n_trials = static_cast<int>(trials.size());

  std::vector<double> errors;
  std::size_t hits = 0;
  int timed = 0;
  for (const TrialResult& t : trials) {
    if (!t.failed) {
      agg.mean_ms.init_ms += t.timings.init_ms;
      agg.mean_ms.projection_ms += t.timings.projection_ms;
      agg.mean_ms.refine_ms += t.timings.refine_ms;
      agg.mean_ms.score_ms += t.timings.score_ms;
      ++timed;
    }
    const std::optional<double> err = t.eval_error();
    if (t.failed || !err || !t.diameter) continue;
    errors.push_back(*err);
    hits += (*err < 0.1 * *t.diameter);
  }
  if (timed > 0) {
    agg.mean_ms.init_ms /= timed;
    agg.mean_ms.projection_ms /= timed;
    agg.mean_ms.refine_ms /= timed;
    agg.mean_ms.score_ms /= timed;
  }
  agg.n_evaluated = static_cast<int>(errors.size());
  if (!errors.empty()) {
    agg.add01_percent = 100.0 * static_cast<double>(hits) / errors.size();
    agg.auc_value = auc(errors, 0.1);
  }
  return agg;
}

namespace {

json timings_to_json(const StageTimings& t) {
  return json{{"init", t.init_ms},
              {"projection", t.projection_ms},
              {"refine", t.refine_ms},
              {"score", t.score_ms}};
}

StageTimings timings_from_json(const json& j) {
  StageTimings t;
  t.init_ms = j.value("init", 0.0);
  t.projection_ms = j.value("projection", 0.0);
  t.refine_ms = j.value("refine", 0.0);
  t.score_ms = j.value("score", 0.0);
  return t;
}

json score_to_json(const ScoreBreakdown& s) {
  return json{{"depth_term", s.depth_term},
              {"photo_term", s.photo_term},
              {"coverage", s.coverage},
              {"total", s.total},
              {"no_overlap", s.no_overlap}};
}

ScoreBreakdown score_from_json(const json& j) {
  ScoreBreakdown s;
  s.depth_term = j.value("depth_term", 0.0);
  s.photo_term = j.value("photo_term", 0.0);
  s.coverage = j.value("coverage", 0.0);
  s.total = j.value("total", 0.0);
  s.no_overlap = j.value("no_overlap", false);
  return s;
}

json optional_to_json(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

std::optional<double> optional_from_json(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<double>();
}

}  // namespace

json report_to_json(const RunReport& report, bool include_timings) {
  json trials = json::array();
  for (const TrialResult& t : report.trials) {
    json jt{{"name", t.name},
            {"n_hypotheses", t.n_hypotheses},
            {"tau", t.tau},
            {"ref_hash", t.ref_hash},
            {"query_hash", t.query_hash},
            {"selected_index", t.selected_index},
            {"selected_pose", pose_to_json(t.selected_pose)},
            {"score", score_to_json(t.selected_score)},
            {"symmetric", t.symmetric},
            {"diameter", optional_to_json(t.diameter)},
            {"add", optional_to_json(t.add)},
            {"add_s", optional_to_json(t.add_s)},
            {"failed", t.failed},
            {"failure", t.failure}};
    json poses = json::array();
    for (const Pose& p : t.iteration_poses) poses.push_back(pose_to_json(p));
    jt["iteration_poses"] = poses;
    if (include_timings) {
      jt["timings_ms"] = timings_to_json(t.timings);
    }
    trials.push_back(jt);
  }

  json agg{{"n_trials", report.aggregate.n_trials},
           {"n_evaluated", report.aggregate.n_evaluated},
           {"add01_percent", optional_to_json(report.aggregate.add01_percent)},
           {"auc", optional_to_json(report.aggregate.auc_value)}};
  if (include_timings) {
    agg["mean_stage_ms"] = timings_to_json(report.aggregate.mean_ms);
  }

  return json{{"schema_version", 1},
              {"config", run_config_to_json(report.config)},
              {"trials", trials},
              {"aggregate", agg}};
}

RunReport report_from_json(const json& j) {
  if (j.value("schema_version", 0) != 1) {
    throw ParseError("report", 0, "unsupported schema version");
  }
  RunReport report;
  report.config = run_config_from_json(require_key(j, "config", "report"));
  for (const json& jt : require_key(j, "trials", "report")) {
    TrialResult t;
    t.name = jt.value("name", "");
    t.n_hypotheses = jt.value("n_hypotheses", 0);
    t.tau = jt.value("tau", 0.0);
    t.ref_hash = jt.value("ref_hash", "");
    t.query_hash = jt.value("query_hash", "");
    t.selected_index = jt.value("selected_index", std::size_t{0});
    if (jt.contains("selected_pose")) t.selected_pose = pose_from_json(jt["selected_pose"]);
    if (jt.contains("score")) t.selected_score = score_from_json(jt["score"]);
    if (jt.contains("iteration_poses")) {
      for (const json& jp : jt["iteration_poses"]) {
        t.iteration_poses.push_back(pose_from_json(jp));
      }
    }
    t.symmetric = jt.value("symmetric", false);
    t.diameter = optional_from_json(jt, "diameter");
    t.add = optional_from_json(jt, "add");
    t.add_s = optional_from_json(jt, "add_s");
    if (jt.contains("timings_ms")) t.timings = timings_from_json(jt["timings_ms"]);
    t.failed = jt.value("failed", false);
    t.failure = jt.value("failure", "");
    report.trials.push_back(std::move(t));
  }
  const json& agg = require_key(j, "aggregate", "report");
  report.aggregate.n_trials = agg.value("n_trials", 0);
  report.aggregate.n_evaluated = agg.value("n_evaluated", 0);
  report.aggregate.add01_percent = optional_from_json(agg, "add01_percent");
  report.aggregate.auc_value = optional_from_json(agg, "auc");
  if (agg.contains("mean_stage_ms")) {
    report.aggregate.mean_ms = timings_from_json(agg["mean_stage_ms"]);
  }
  return report;
}

std::string report_to_string(const RunReport& report, bool include_timings) {
  return report_to_json(report, include_timings).dump(2) + "\n";
}

}  // namespace pac
