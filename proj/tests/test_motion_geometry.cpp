// Copyright 2026 The drivekit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <stdexcept>
#include <random>

#include "doctest.h"
#include "drivekit/motion_geometry.hpp"

using namespace drivekit;
using P2 = PointN<2>;

TEST_CASE("memory_displacements examples") {
  const std::vector<std::vector<P2>> history = {{{1, 0}, {2, 0}, {3, 0}}};
  const auto d = memory_displacements<2>(history, 1);
  CHECK(d == std::vector<P2>{{0, 0}, {1, 0}, {2, 0}});

  const std::vector<std::vector<P2>> deep = {
      {{1, 0}, {2, 0}, {3, 0}}, {{0, 1}, {0, 2}, {0, 4}}, {{5, 5}, {6, 6}, {9, 9}}};
  CHECK(memory_displacements<2>(deep, 2) == std::vector<P2>{{0, 0}, {0, 2}});
  CHECK(memory_displacements<2>(deep, 3) == std::vector<P2>{{0, 0}});

  const std::vector<std::vector<P2>> parked = {{{4, 4}, {4, 4}, {4, 4}, {4, 4}}};
  for (const auto& v : memory_displacements<2>(parked, 1)) CHECK(v == P2{0, 0});

  CHECK_THROWS_AS(memory_displacements<2>(history, 0), std::out_of_range);
  CHECK_THROWS_AS(memory_displacements<2>(history, 2), std::out_of_range);
}

TEST_CASE("memory_displacements length and translation invariance") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> c(-20.0, 20.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<P2>> hist(5);
    for (auto& t : hist) {
      for (int s = 0; s < 12; ++s) t.push_back({c(rng), c(rng)});
    }
    const P2 u{c(rng), c(rng)};
    auto shifted = hist;
    for (auto& t : shifted) {
      for (auto& p : t) p = {p[0] + u[0], p[1] + u[1]};
    }
    for (std::size_t k = 1; k <= 5; ++k) {
      const auto a = memory_displacements<2>(hist, k);
      const auto b = memory_displacements<2>(shifted, k);
      CHECK(a.size() == 12 - k + 1);
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a[i][0] - b[i][0]) < 1e-12);
        CHECK(std::abs(a[i][1] - b[i][1]) < 1e-12);
      }
    }
  }
}

TEST_CASE("current_displacements examples") {
  const std::vector<P2> cur = {{1, 0}, {2, 0}, {3, 0}};
  CHECK(current_displacements<2>(cur, {0, 0}, 5, 3) == std::vector<P2>{{1, 0}, {2, 0}});
  CHECK(current_displacements<2>(cur, {0, 0}, 5, 5).empty());
  const std::vector<P2> still = {{2, 2}, {2, 2}, {2, 2}};
  for (const auto& v : current_displacements<2>(still, {2, 2}, 3, 1)) CHECK(v == P2{0, 0});
  CHECK_THROWS_AS(current_displacements<2>(cur, {0, 0}, 5, 0), std::out_of_range);
  CHECK_THROWS_AS(current_displacements<2>(cur, {0, 0}, 5, 1), std::out_of_range);
  // Three-dimensional points work the same way.
  const std::vector<PointN<3>> cur3 = {{1, 0, 1}, {2, 0, 2}};
  CHECK(current_displacements<3>(cur3, {0, 0, 1}, 3, 1) == std::vector<PointN<3>>{{1, 0, 0}, {2, 0, 1}});
}

TEST_CASE("curve_pe_points delegates to sampling") {
  const MapElement line{MapClass::kLane, {{1, {{0, 0}, {1, 0}}}}};
  CHECK(curve_pe_points(line, 3) == sample_element(line, 3));
  CHECK(curve_pe_points(line).size() == kDefaultSamplesPerPiece);
}

TEST_CASE("cluster_anchors K=1 is the mean") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> c(-10.0, 10.0);
  std::vector<std::vector<Vec2>> trajs(17);
  for (auto& t : trajs) {
    for (int s = 0; s < 6; ++s) t.push_back({c(rng), c(rng)});
  }
  const AnchorSet set = cluster_anchors(trajs, 1);
  REQUIRE(set.anchors.size() == 1);
  for (int s = 0; s < 6; ++s) {
    double sx = 0.0, sy = 0.0;
    for (const auto& t : trajs) {
      sx += t[s].x;
      sy += t[s].y;
    }
    CHECK(set.anchors[0][s].x == sx / 17.0);
    CHECK(set.anchors[0][s].y == sy / 17.0);
  }
}

TEST_CASE("cluster_anchors recovers separated clusters") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<std::vector<Vec2>> trajs;
  std::vector<Vec2> sum_left(8), sum_right(8);
  for (int i = 0; i < 40; ++i) {
    const double side = i % 2 == 0 ? 1.0 : -1.0;
    std::vector<Vec2> t;
    for (int s = 0; s < 8; ++s) t.push_back({2.0 * s + noise(rng), side * (0.3 * s * s) + noise(rng)});
    auto& sum = side > 0 ? sum_left : sum_right;
    for (int s = 0; s < 8; ++s) sum[s] = sum[s] + t[s];
    trajs.push_back(std::move(t));
  }
  const AnchorSet set = cluster_anchors(trajs, 2, 100, 5);
  REQUIRE(set.anchors.size() == 2);
  const std::size_t left = set.anchors[0].back().y > 0 ? 0 : 1;
  for (int s = 0; s < 8; ++s) {
    CHECK(std::abs(set.anchors[left][s].x - sum_left[s].x / 20.0) < 1e-6);
    CHECK(std::abs(set.anchors[left][s].y - sum_left[s].y / 20.0) < 1e-6);
    CHECK(std::abs(set.anchors[1 - left][s].y - sum_right[s].y / 20.0) < 1e-6);
  }
}

TEST_CASE("cluster_anchors with K distinct trajectories has zero inertia") {
  std::vector<std::vector<Vec2>> trajs;
  for (int i = 0; i < 6; ++i) {
    for (int rep = 0; rep < 3; ++rep) trajs.push_back({{double(i), 0}, {double(i), double(i * i)}});
  }
  const AnchorSet set = cluster_anchors(trajs, 6, 100, 1);
  CHECK(set.inertia() == 0.0);
}

TEST_CASE("cluster_anchors inertia is monotone and deterministic") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> c(-30.0, 30.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<Vec2>> trajs(60);
    for (auto& t : trajs) {
      for (int s = 0; s < 6; ++s) t.push_back({c(rng), c(rng)});
    }
    const AnchorSet a = cluster_anchors(trajs, 6, 100, trial);
    for (std::size_t i = 1; i < a.inertia_history.size(); ++i) {
      CHECK(a.inertia_history[i] <= a.inertia_history[i - 1]);
    }
    const AnchorSet b = cluster_anchors(trajs, 6, 100, trial);
    CHECK(a.anchors == b.anchors);
    CHECK(a.assignment == b.assignment);
  }
}

TEST_CASE("cluster_anchors input errors") {
  const std::vector<std::vector<Vec2>> two = {{{0, 0}}, {{1, 1}}};
  CHECK_THROWS_AS(cluster_anchors(two, 3), std::invalid_argument);
  CHECK_THROWS_AS(cluster_anchors(two, 0), std::invalid_argument);
  const std::vector<std::vector<Vec2>> ragged = {{{0, 0}}, {{1, 1}, {2, 2}}};
  CHECK_THROWS_AS(cluster_anchors(ragged, 1), std::invalid_argument);
}
