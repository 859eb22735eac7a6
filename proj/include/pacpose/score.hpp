#pragma once

#include <cstddef>
#include <vector>

#include "pacpose/geometry.hpp"
#include "pacpose/observation.hpp"
#include "pacpose/projection.hpp"

namespace pac {

struct ScoreWeights {
  double depth = 0.5;
  double photo = 0.2;
  double coverage = 0.3;

  void validate() const;  // non-negative, sum to 1
};

// Consistency score between a projected hypothesis and the query, higher is
// better. Each term lies in [0, 1]; total is their configured convex mix.
struct ScoreBreakdown {
  double depth_term = 0.0;
  double photo_term = 0.0;
  double coverage = 0.0;
  double total = 0.0;
  ScoreWeights weights;
  bool no_overlap = false;
};

// Over pixels valid in both views: mean exponential depth agreement (decay
// scale 0.05 * diameter), prior-weighted photometric agreement, and query
// coverage. Zero overlap yields the legal worst score of 0, flagged.
ScoreBreakdown score_hypothesis(const ProjectionResult& proj, const Observation& query,
                                const SymmetryPrior& prior,
                                const ScoreWeights& weights = ScoreWeights{});

struct SelectionResult {
  Pose best;
  std::size_t index = 0;
  std::vector<std::size_t> ranking;  // hypothesis indices, best first
};

// Argmax of total score; exact ties go to the lower index.
SelectionResult select(const std::vector<Pose>& poses,
                       const std::vector<ScoreBreakdown>& scores);

}  // namespace pac
