#include "pacpose/score.hpp"

#include <algorithm>
#include <cmath>

#include "pacpose/error.hpp"

namespace pac {

void ScoreWeights::validate() const {
  if (!(depth >= 0.0) || !(photo >= 0.0) || !(coverage >= 0.0)) {
    throw InvalidInput("score weights must be non-negative");
  }
  if (std::abs(depth + photo + coverage - 1.0) > 1e-9) {
    throw InvalidInput("score weights must sum to 1");
  }
}

ScoreBreakdown score_hypothesis(const ProjectionResult& proj, const Observation& query,
                                const SymmetryPrior& prior, const ScoreWeights& weights) {
  weights.validate();
  if (proj.width != query.width || proj.height != query.height) {
    throw InvalidInput("projection and query dimensions disagree");
  }
  if (!(prior.diameter > 0.0)) {
    throw InvalidInput("scoring requires a positive object diameter");
  }

  ScoreBreakdown out;
  out.weights = weights;

  const double depth_scale = 0.05 * prior.diameter;
  std::size_t n_query = 0;
  std::size_t n_co = 0;
  double depth_sum = 0.0;
  double photo_sum = 0.0;
  double photo_wsum = 0.0;

  const std::size_t n = proj.xyz.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (query.valid[i]) ++n_query;
    if (!proj.valid[i] || !query.valid[i]) continue;
    ++n_co;
    depth_sum += std::exp(-std::abs(proj.xyz[i].z() - query.xyz[i].z()) / depth_scale);

    double l1 = 0.0;
    for (int c = 0; c < 3; ++c) {
      l1 += std::abs(static_cast<int>(proj.rgb[i][c]) - static_cast<int>(query.rgb[i][c]));
    }
    const double agreement = 1.0 - l1 / 765.0;
    const double w = proj.prior[i] * (query.has_prior() ? query.prior[i] : 1.0);
    photo_sum += w * agreement;
    photo_wsum += w;
  }

  if (n_co == 0) {
    out.no_overlap = true;
    return out;  // all terms zero: legal worst score
  }

  out.depth_term = depth_sum / static_cast<double>(n_co);
  out.photo_term = photo_wsum > 0.0 ? photo_sum / photo_wsum : 0.0;
  out.coverage = n_query > 0 ? static_cast<double>(n_co) / static_cast<double>(n_query) : 0.0;
  out.total = weights.depth * out.depth_term + weights.photo * out.photo_term +
              weights.coverage * out.coverage;
  return out;
}

SelectionResult select(const std::vector<Pose>& poses,
                       const std::vector<ScoreBreakdown>& scores) {
  if (poses.empty()) {
    throw EmptyHypothesisSet("cannot select from an empty hypothesis set");
  }
  if (poses.size() != scores.size()) {
    throw InvalidInput("pose and score counts disagree");
  }
  SelectionResult out;
  out.ranking.resize(poses.size());
  for (std::size_t i = 0; i < poses.size(); ++i) out.ranking[i] = i;
  std::stable_sort(out.ranking.begin(), out.ranking.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a].total > scores[b].total;
                   });
  out.index = out.ranking.front();
  out.best = poses[out.index];
  return out;
}

}  // namespace pac
