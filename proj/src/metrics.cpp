#include "pacpose/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pacpose/error.hpp"

namespace pac {

namespace {

double max_pairwise_distance(const std::vector<Eigen::Vector3d>& vertices) {
  double best2 = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      best2 = std::max(best2, (vertices[i] - vertices[j]).squaredNorm());
    }
  }
  return std::sqrt(best2);
}

}  // namespace

ModelPoints ModelPoints::create(std::vector<Eigen::Vector3d> vertices) {
  if (vertices.empty()) {
    throw InvalidInput("model needs at least one vertex");
  }
  ModelPoints m;
  m.diameter = max_pairwise_distance(vertices);
  m.vertices = std::move(vertices);
  return m;
}

ModelPoints ModelPoints::with_claimed_diameter(std::vector<Eigen::Vector3d> vertices,
                                               double claimed, double tol) {
  ModelPoints m = create(std::move(vertices));
  if (std::abs(m.diameter - claimed) > tol) {
    throw InvalidInput("claimed diameter disagrees with recomputed vertex span");
  }
  return m;
}

double add_error(const Pose& pred, const Pose& truth, const ModelPoints& model) {
  if (model.vertices.empty()) {
    throw InvalidInput("model has no vertices");
  }
  double sum = 0.0;
  for (const Eigen::Vector3d& x : model.vertices) {
    sum += (pred * x - truth * x).norm();
  }
  return sum / static_cast<double>(model.vertices.size());
}

double add_s_error(const Pose& pred, const Pose& truth, const ModelPoints& model) {
  if (model.vertices.empty()) {
    throw InvalidInput("model has no vertices");
  }
  const std::size_t n = model.vertices.size();
  std::vector<Eigen::Vector3d> truth_pts(n);
  for (std::size_t j = 0; j < n; ++j) truth_pts[j] = truth * model.vertices[j];

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d p = pred * model.vertices[i];
    double best2 = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      best2 = std::min(best2, (p - truth_pts[j]).squaredNorm());
    }
    sum += std::sqrt(best2);
  }
  return sum / static_cast<double>(n);
}

double add_accuracy(const std::vector<double>& errors, const ModelPoints& model,
                    double fraction) {
  if (errors.empty()) {
    throw InvalidInput("accuracy of an empty error list is undefined");
  }
  if (!(fraction > 0.0)) {
    throw InvalidInput("threshold fraction must be positive");
  }
  const double threshold = fraction * model.diameter;
  std::size_t hits = 0;
  for (double e : errors) hits += (e < threshold);
  return 100.0 * static_cast<double>(hits) / static_cast<double>(errors.size());
}

double auc(const std::vector<double>& errors, double max_threshold) {
  if (errors.empty()) {
    throw InvalidInput("auc of an empty error list is undefined");
  }
  if (!(max_threshold > 0.0)) {
    throw InvalidInput("auc threshold must be positive");
  }
  // The accuracy step curve jumps by 1/n at each error value, so the integral
  // over [0, T] is the sum of (T - e_i)+ scaled by 1/(n T).
  double sum = 0.0;
  for (double e : errors) {
    sum += std::max(0.0, max_threshold - std::max(e, 0.0));
  }
  return sum / (static_cast<double>(errors.size()) * max_threshold);
}

}  // namespace pac
