#include "pacpose/run_config.hpp"

#include <cmath>

#include "pacpose/error.hpp"
#include "pacpose/json_convert.hpp"

namespace pac {

using nlohmann::json;

void RunConfig::validate() const {
  if (n_viewpoints < 1 || n_inplane < 1) {
    throw InvalidInput("viewpoint and in-plane counts must be at least 1");
  }
  if (!(tau >= -1.0 && tau <= 1.0)) {
    throw InvalidInput("tau must lie in [-1, 1]");
  }
  if (std::abs(gravity_up.norm() - 1.0) > 1e-9) {
    throw InvalidInput("gravity up vector must be unit length");
  }
  if (iterations < 1) {
    throw InvalidInput("iteration count must be at least 1");
  }
  if (!(delta >= 0.0)) {
    throw InvalidInput("delta must be non-negative");
  }
  score_weights.validate();
  if (!(max_corr_factor > 0.0)) {
    throw InvalidInput("correspondence gate factor must be positive");
  }
  if (min_correspondences < 3) {
    throw InvalidInput("need at least three correspondences");
  }
  if (parallelism < 0) {
    throw InvalidInput("parallelism degree cannot be negative");
  }
}

json run_config_to_json(const RunConfig& cfg) {
  return json{{"n_viewpoints", cfg.n_viewpoints},
              {"n_inplane", cfg.n_inplane},
              {"tau", cfg.tau},
              {"gravity_up", {cfg.gravity_up.x(), cfg.gravity_up.y(), cfg.gravity_up.z()}},
              {"iterations", cfg.iterations},
              {"delta", cfg.delta},
              {"score_weights",
               {{"depth", cfg.score_weights.depth},
                {"photo", cfg.score_weights.photo},
                {"coverage", cfg.score_weights.coverage}}},
              {"max_corr_factor", cfg.max_corr_factor},
              {"min_correspondences", cfg.min_correspondences},
              {"use_prior_weights", cfg.use_prior_weights},
              {"parallelism", cfg.parallelism},
              {"seed", cfg.seed}};
}

RunConfig run_config_from_json(const json& j) {
  RunConfig cfg;
  cfg.n_viewpoints = j.value("n_viewpoints", cfg.n_viewpoints);
  cfg.n_inplane = j.value("n_inplane", cfg.n_inplane);
  cfg.tau = j.value("tau", cfg.tau);
  if (j.contains("gravity_up")) {
    const json& g = j["gravity_up"];
    if (!g.is_array() || g.size() != 3) {
      throw ParseError("config", 0, "gravity_up must be a 3-element array");
    }
    cfg.gravity_up = Eigen::Vector3d(g[0].get<double>(), g[1].get<double>(),
                                     g[2].get<double>());
  }
  cfg.iterations = j.value("iterations", cfg.iterations);
  cfg.delta = j.value("delta", cfg.delta);
  if (j.contains("score_weights")) {
    const json& w = j["score_weights"];
    cfg.score_weights.depth = w.value("depth", cfg.score_weights.depth);
    cfg.score_weights.photo = w.value("photo", cfg.score_weights.photo);
    cfg.score_weights.coverage = w.value("coverage", cfg.score_weights.coverage);
  }
  cfg.max_corr_factor = j.value("max_corr_factor", cfg.max_corr_factor);
  cfg.min_correspondences = j.value("min_correspondences", cfg.min_correspondences);
  cfg.use_prior_weights = j.value("use_prior_weights", cfg.use_prior_weights);
  cfg.parallelism = j.value("parallelism", cfg.parallelism);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.validate();
  return cfg;
}

}  // namespace pac
