// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "jeer/kmeans.hpp"

using namespace jeer;

namespace {

std::vector<std::vector<double>> two_blobs() {
  std::vector<std::vector<double>> points;
  std::mt19937 rng(17);
  std::normal_distribution<double> jitter(0.0, 0.05);
  for (int i = 0; i < 25; ++i) points.push_back({0.0 + jitter(rng), 0.0 + jitter(rng)});
  for (int i = 0; i < 25; ++i) points.push_back({10.0 + jitter(rng), 10.0 + jitter(rng)});
  return points;
}

}  // namespace

TEST_CASE("two tight blobs are recovered exactly at k = 2") {
  auto points = two_blobs();
  auto model = kmeans(points, 2, 7);
  REQUIRE(model.k == 2);
  const std::uint32_t first = model.assignments[0];
  for (int i = 0; i < 25; ++i) CHECK(model.assignments[i] == first);
  for (int i = 25; i < 50; ++i) CHECK(model.assignments[i] == 1 - first);
  CHECK(model.sizes[0] == 25);
  CHECK(model.sizes[1] == 25);
}

TEST_CASE("seeded runs are bit-identical") {
  auto points = two_blobs();
  for (std::uint64_t seed : {1ULL, 42ULL, 31337ULL}) {
    auto a = kmeans(points, 3, seed);
    auto b = kmeans(points, 3, seed);
    CHECK(a.assignments == b.assignments);
    CHECK(a.centroids == b.centroids);  // exact, not approximate
    CHECK(a.objective == b.objective);
    CHECK(a.objective_history == b.objective_history);
  }
}

TEST_CASE("objective is monotone non-increasing on random data") {
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  for (int run = 0; run < 20; ++run) {
    std::vector<std::vector<double>> points;
    const size_t n = 30 + rng() % 100, dim = 2 + rng() % 5;
    for (size_t i = 0; i < n; ++i) {
      std::vector<double> p(dim);
      for (auto& v : p) v = coord(rng);
      points.push_back(std::move(p));
    }
    auto model = kmeans(points, 4, rng());
    REQUIRE(!model.objective_history.empty());
    for (size_t i = 1; i < model.objective_history.size(); ++i)
      CHECK(model.objective_history[i] <= model.objective_history[i - 1] + 1e-9);
  }
}

TEST_CASE("every point ends on its nearest centroid") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> coord(0.0, 4.0);
  std::vector<std::vector<double>> points;
  for (int i = 0; i < 80; ++i) points.push_back({coord(rng), coord(rng), coord(rng)});
  auto model = kmeans(points, 5, 11);
  for (size_t i = 0; i < points.size(); ++i) {
    double assigned = 0, best = 1e300;
    for (size_t c = 0; c < model.k; ++c) {
      double d = 0;
      for (size_t j = 0; j < points[i].size(); ++j) {
        const double diff = points[i][j] - model.centroids[c][j];
        d += diff * diff;
      }
      if (c == model.assignments[i]) assigned = d;
      best = std::min(best, d);
    }
    CHECK(assigned == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("k larger than the number of distinct points is an error") {
  std::vector<std::vector<double>> points = {{1, 1}, {1, 1}, {2, 2}};
  CHECK_THROWS_AS(kmeans(points, 3, 1), std::invalid_argument);
  CHECK_NOTHROW(kmeans(points, 2, 1));
  CHECK_THROWS_AS(kmeans({}, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(kmeans(points, 0, 1), std::invalid_argument);
}

TEST_CASE("centroid axis cosines match the hand computation") {
  // centroid (0.85, 0.20, 0): cosine with axis i is v_i / ||v||
  const std::vector<double> centroid = {0.85, 0.20, 0.0};
  const double norm = std::sqrt(0.85 * 0.85 + 0.20 * 0.20);
  auto cos = axis_cosines(centroid);
  CHECK(cos[0] == doctest::Approx(0.85 / norm).epsilon(1e-12));
  CHECK(cos[1] == doctest::Approx(0.20 / norm).epsilon(1e-12));
  CHECK(cos[2] == doctest::Approx(0.0).epsilon(1e-12));

  auto zero = axis_cosines({0.0, 0.0, 0.0});
  CHECK(zero == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("model axis cosines are the cosines of its centroids") {
  // three points per cluster around fixed centres in 3-D
  std::vector<std::vector<double>> points = {
      {4, 0, 0}, {6, 0, 0}, {5, 0, 0},  // centre (5, 0, 0)
      {0, 2, 2}, {0, 4, 4}, {0, 3, 3},  // centre (0, 3, 3)
  };
  auto model = kmeans(points, 2, 3);
  REQUIRE(model.k == 2);
  for (size_t c = 0; c < model.k; ++c) {
    double norm = 0;
    for (double v : model.centroids[c]) norm += v * v;
    norm = std::sqrt(norm);
    for (size_t j = 0; j < 3; ++j)
      CHECK(model.axis_cosines[c][j] ==
            doctest::Approx(model.centroids[c][j] / norm).epsilon(1e-12));
  }
  // the axis-aligned cluster has cosine 1 with its axis
  bool found_axis_aligned = false;
  for (size_t c = 0; c < model.k; ++c)
    if (model.axis_cosines[c][0] == doctest::Approx(1.0).epsilon(1e-12)) found_axis_aligned = true;
  CHECK(found_axis_aligned);
}

TEST_CASE("farthest-point seeding keeps duplicate-heavy inputs stable") {
  std::vector<std::vector<double>> points;
  for (int i = 0; i < 30; ++i) points.push_back({1.0, 1.0});
  points.push_back({9.0, 9.0});
  points.push_back({-9.0, 9.0});
  auto model = kmeans(points, 3, 123);
  CHECK(model.k == 3);
  std::set<std::uint32_t> clusters(model.assignments.begin(), model.assignments.end());
  CHECK(clusters.size() == 3);
}
