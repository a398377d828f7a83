// SPDX-License-Identifier: Apache-2.0
#ifndef JEER_KMEANS_HPP_
#define JEER_KMEANS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace jeer {

struct ClusterModel {
  size_t k = 0;  // non-empty clusters in the final model
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> centroids;
  std::vector<std::uint32_t> assignments;         // per input point
  std::vector<size_t> sizes;                      // per cluster
  std::vector<double> objective_history;          // SSE after each assignment step
  double objective = 0.0;                         // final SSE
  std::vector<std::vector<double>> axis_cosines;  // per cluster, cosine with each axis
};

namespace detail {

inline double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace detail

// Cosine of a vector with each coordinate axis: v[i] / ||v||. A zero vector
// yields all zeros.
inline std::vector<double> axis_cosines(const std::vector<double>& v) {
  double norm = 0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  std::vector<double> out(v.size(), 0.0);
  if (norm == 0.0) return out;
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / norm;
  return out;
}

// Lloyd's algorithm with farthest-point seeding. The seeded PRNG picks the
// first centre; every later centre is the point with the largest distance to
// the chosen set (ties to the lowest index), so runs are deterministic given
// the seed. Iterates to an assignment fixpoint or max_iterations. Empty
// clusters keep their previous centroid during iteration and are dropped
// from the final model.
inline ClusterModel kmeans(const std::vector<std::vector<double>>& points, size_t k,
                           std::uint64_t seed, size_t max_iterations = 300) {
  if (k == 0) throw std::invalid_argument("kmeans: k must be positive");
  if (points.empty()) throw std::invalid_argument("kmeans: no points");
  const size_t dim = points[0].size();
  for (const auto& p : points)
    if (p.size() != dim) throw std::invalid_argument("kmeans: inconsistent dimensions");

  {
    std::set<std::vector<double>> distinct(points.begin(), points.end());
    if (distinct.size() < k)
      throw std::invalid_argument("kmeans: fewer distinct points than clusters");
  }

  ClusterModel model;
  model.seed = seed;

  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> centroids;
  centroids.reserve(k);
  centroids.push_back(points[rng() % points.size()]);
  while (centroids.size() < k) {
    size_t far_idx = 0;
    double far_d = -1.0;
    for (size_t i = 0; i < points.size(); ++i) {
      double d = detail::sq_dist(points[i], centroids[0]);
      for (size_t c = 1; c < centroids.size(); ++c)
        d = std::min(d, detail::sq_dist(points[i], centroids[c]));
      if (d > far_d) {
        far_d = d;
        far_idx = i;
      }
    }
    centroids.push_back(points[far_idx]);
  }

  std::vector<std::uint32_t> assign(points.size(), 0);
  for (size_t iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    double sse = 0;
    for (size_t i = 0; i < points.size(); ++i) {
      std::uint32_t best_c = 0;
      double best_d = detail::sq_dist(points[i], centroids[0]);
      for (std::uint32_t c = 1; c < centroids.size(); ++c) {
        const double d = detail::sq_dist(points[i], centroids[c]);
        if (d < best_d) {
          best_d = d;
          best_c = c;
        }
      }
      sse += best_d;
      if (assign[i] != best_c) {
        assign[i] = best_c;
        changed = true;
      }
    }
    model.objective_history.push_back(sse);
    if (!changed && iter > 0) break;

    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<size_t> counts(k, 0);
    for (size_t i = 0; i < points.size(); ++i) {
      ++counts[assign[i]];
      for (size_t d = 0; d < dim; ++d) sums[assign[i]][d] += points[i][d];
    }
    for (size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;  // keep previous centroid
      for (size_t d = 0; d < dim; ++d) centroids[c][d] = sums[c][d] / double(counts[c]);
    }
  }

  // Drop empty clusters and renumber.
  std::vector<size_t> counts(k, 0);
  for (auto c : assign) ++counts[c];
  std::vector<std::int32_t> remap(k, -1);
  for (size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) continue;
    remap[c] = static_cast<std::int32_t>(model.centroids.size());
    model.centroids.push_back(centroids[c]);
    model.sizes.push_back(counts[c]);
  }
  model.k = model.centroids.size();
  model.assignments.resize(points.size());
  for (size_t i = 0; i < points.size(); ++i)
    model.assignments[i] = static_cast<std::uint32_t>(remap[assign[i]]);

  model.objective = 0;
  for (size_t i = 0; i < points.size(); ++i)
    model.objective += detail::sq_dist(points[i], model.centroids[model.assignments[i]]);
  for (const auto& c : model.centroids) model.axis_cosines.push_back(axis_cosines(c));
  return model;
}

}  // namespace jeer

#endif  // JEER_KMEANS_HPP_
