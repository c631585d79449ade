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
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "drivekit/relationship.hpp"

using namespace drivekit;

namespace {

Trajectory straight(double x0, double y0, double vx, double vy, int steps, double dt = 0.5) {
  Trajectory t;
  t.dt = dt;
  const double yaw = (vx == 0.0 && vy == 0.0) ? 0.0 : std::atan2(vy, vx);
  for (int k = 0; k <= steps; ++k) t.poses.push_back({x0 + vx * dt * k, y0 + vy * dt * k, yaw});
  return t;
}

Trajectory mirrored(const Trajectory& t) {
  Trajectory m = t;
  for (auto& p : m.poses) {
    p.y = -p.y;
    p.yaw = normalize_angle(-p.yaw);
  }
  return m;
}

LateralRelation swap(LateralRelation r) {
  if (r == LateralRelation::kLeft) return LateralRelation::kRight;
  if (r == LateralRelation::kRight) return LateralRelation::kLeft;
  return r;
}

}  // namespace

TEST_CASE("probe_trajectory examples") {
  const Trajectory ego = straight(0, 0, 2, 0, 6);
  CHECK(probe_trajectory(ego, ProbeMode::kSpeedup, 0.0) == ego);
  const Trajectory fast = probe_trajectory(ego, ProbeMode::kSpeedup, 2.0);
  CHECK(fast.poses[1].x == doctest::Approx(1.25));
  CHECK(fast.poses[1].y == 0.0);
  // Overrun is extrapolated along the final heading.
  CHECK(fast.poses[6].x == doctest::Approx(2.0 * 3.0 + 0.5 * 2.0 * 9.0));

  const Trajectory slow = straight(0, 0, 1, 0, 6);
  const Trajectory stop = probe_trajectory(slow, ProbeMode::kSpeeddown, 4.0);
  CHECK(stop.poses[1].x == doctest::Approx(0.125));
  for (std::size_t k = 2; k < stop.size(); ++k) CHECK(stop.poses[k].x == doctest::Approx(0.125));

  const Trajectory parked = straight(3, 4, 0, 0, 4);
  CHECK(probe_trajectory(parked, ProbeMode::kSpeedup, 2.0) == parked);
  CHECK_THROWS_AS(probe_trajectory(straight(0, 0, 1, 0, 0), ProbeMode::kSpeedup, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(probe_trajectory(ego, ProbeMode::kSpeedup, -1.0), std::invalid_argument);
}

TEST_CASE("probe_trajectory follows a curved path") {
  Trajectory arc;
  arc.dt = 0.5;
  const double r = 10.0;
  for (int k = 0; k <= 8; ++k) {
    const double a = 0.1 * k;
    arc.poses.push_back({r * std::sin(a), r - r * std::cos(a), a});
  }
  const Trajectory fast = probe_trajectory(arc, ProbeMode::kSpeedup, 1.0);
  for (std::size_t k = 0; k < 6; ++k) {
    const Pose2 p = fast.poses[k];
    // Points on the chord polyline stay within the sagitta of the circle.
    CHECK(std::abs(std::hypot(p.x, p.y - r) - r) < 0.02);
  }
}

TEST_CASE("label_relationships hand cases") {
  const Trajectory ego = straight(0, 0, 5, 0, 6);
  const std::vector<Trajectory> far = {straight(0, 100, 5, 0, 6)};
  CHECK(label_relationships(far, ego)[0] == RelationshipLabel{});

  const std::vector<Trajectory> left = {straight(0, 1, 5, 0, 6)};
  CHECK(label_relationships(left, ego)[0].lateral == LateralRelation::kLeft);
  const std::vector<Trajectory> right = {straight(0, -1, 5, 0, 6)};
  CHECK(label_relationships(right, ego)[0].lateral == LateralRelation::kRight);

  const std::vector<Trajectory> lead = {straight(3, 0, 5, 0, 6)};
  CHECK(label_relationships(lead, ego)[0].longitudinal == LongitudinalRelation::kFront);
  const std::vector<Trajectory> trailing = {straight(-3, 0, 5, 0, 6)};
  CHECK(label_relationships(trailing, ego)[0].longitudinal == LongitudinalRelation::kBack);
}

TEST_CASE("label_relationships errors and zero thresholds") {
  const Trajectory ego = straight(0, 0, 5, 0, 6);
  const std::vector<Trajectory> shorter = {straight(0, 1, 5, 0, 5)};
  CHECK_THROWS_AS(label_relationships(shorter, ego), std::invalid_argument);
  const std::vector<Trajectory> other_dt = {straight(0, 1, 5, 0, 6, 0.1)};
  CHECK_THROWS_AS(label_relationships(other_dt, ego), std::invalid_argument);
  const RelationshipThresholds bad{-1.0, 5.0, 2.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> c(-5.0, 5.0);
  std::vector<Trajectory> agents;
  for (int i = 0; i < 30; ++i) agents.push_back(straight(c(rng), c(rng), c(rng), c(rng), 6));
  for (const auto& l : label_relationships(agents, ego, {0.0, 0.0, 2.0})) CHECK(l == RelationshipLabel{});
}

TEST_CASE("labels are mirror-symmetric and rigid-invariant") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> pos(-12.0, 12.0);
  std::uniform_real_distribution<double> vel(-6.0, 6.0);
  std::uniform_real_distribution<double> yaw(-std::numbers::pi, std::numbers::pi);
  for (int scene = 0; scene < 100; ++scene) {
    const Trajectory ego = straight(0, 0, std::abs(vel(rng)) + 1.0, 0, 6);
    std::vector<Trajectory> agents;
    for (int i = 0; i < 8; ++i) agents.push_back(straight(pos(rng), pos(rng), vel(rng), vel(rng), 6));
    const auto labels = label_relationships(agents, ego);

    std::vector<Trajectory> flipped;
    for (const auto& a : agents) flipped.push_back(mirrored(a));
    const auto mirror = label_relationships(flipped, mirrored(ego));

    const Pose2 frame = make_pose(pos(rng), pos(rng), yaw(rng));
    auto move = [&](Trajectory t) {
      for (auto& p : t.poses) p = transform_from_frame(p, frame);
      return t;
    };
    std::vector<Trajectory> moved;
    for (const auto& a : agents) moved.push_back(move(a));
    const auto rigid = label_relationships(moved, move(ego));
    for (std::size_t i = 0; i < agents.size(); ++i) {
      CHECK(mirror[i].longitudinal == labels[i].longitudinal);
      // A lateral offset of exactly zero has no side to swap; skip it.
      CHECK(mirror[i].lateral == swap(labels[i].lateral));
      CHECK(rigid[i] == labels[i]);
    }
  }
}
