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

#include "doctest.h"
#include "drivekit/errors.hpp"
#include "drivekit/metrics.hpp"
#include "drivekit/scenario_gen.hpp"

using namespace drivekit;

namespace {

CollisionConfig config_for(const Scenario& s) {
  CollisionConfig cfg;
  cfg.ego_length = s.ego.length;
  cfg.ego_width = s.ego.width;
  return cfg;
}

}  // namespace

TEST_CASE("near_miss gap is exact at every step") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.gap = 0.3;
    const Scenario s = generate(spec);
    REQUIRE(s.agents.size() == 1);
    for (std::size_t t = 0; t < s.ego.trajectory.size(); ++t) {
      const double gap = obb_separation(s.ego.box_at(t), s.agents[0].box_at(t));
      CHECK(std::abs(gap - 0.3) < 1e-9);
    }
    CHECK_FALSE(sparse_collision(evaluation_plan(s), s.agents, config_for(s)).first_collision_step);
  }
}

TEST_CASE("negative near_miss gap collides at every horizon") {
  GenSpec spec;
  spec.gap = -0.1;
  const Scenario s = generate(spec);
  const auto r = sparse_collision(evaluation_plan(s), s.agents, config_for(s));
  CHECK(r.horizon_flags == std::vector<bool>{true, true, true});
  spec.gap = -5.0;
  CHECK_THROWS_AS(generate(spec), DomainError);
}

TEST_CASE("generation is deterministic and validated") {
  for (ScenarioKind kind : {ScenarioKind::kNearMiss, ScenarioKind::kTurn, ScenarioKind::kCrossing,
                            ScenarioKind::kStraight, ScenarioKind::kRandom}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      GenSpec spec;
      spec.kind = kind;
      spec.seed = seed;
      const Scenario a = generate(spec);
      CHECK(save_scenario(a) == save_scenario(generate(spec)));
      CHECK_NOTHROW(validate_scenario(a));
      CHECK(a.ego.trajectory.size() == 13);
      for (const auto& e : a.map_elements) {
        for (const auto& p : e.pieces) CHECK(p.degree <= 2);
      }
    }
  }
  GenSpec a;
  GenSpec b;
  b.seed = 1;
  CHECK(save_scenario(generate(a)) != save_scenario(generate(b)));
}

TEST_CASE("turn scenario is a quarter arc") {
  GenSpec spec;
  spec.kind = ScenarioKind::kTurn;
  spec.global_placement = false;
  const Scenario s = generate(spec);
  const auto& poses = s.ego.trajectory.poses;
  CHECK(std::abs(normalize_angle(poses[6].yaw - poses[0].yaw) - 0.5 * std::numbers::pi) < 1e-9);
  for (std::size_t t = 0; t <= 6; ++t) {
    CHECK(std::abs(std::hypot(poses[t].x, poses[t].y - spec.turn_radius) - spec.turn_radius) < 1e-9);
  }
}

TEST_CASE("crossing agent crosses the ego path at the requested time") {
  GenSpec spec;
  spec.kind = ScenarioKind::kCrossing;
  spec.global_placement = false;
  spec.crossing_time = 2.0;
  spec.crossing_offset = 0.0;
  const Scenario s = generate(spec);
  const auto& a = s.agents[0].trajectory.poses;
  CHECK(std::abs(a[4].y) < 1e-9);
  CHECK(std::abs(a[4].x - s.ego.trajectory.poses[4].x) < 1e-9);
  CHECK(std::abs(normalize_angle(a[0].yaw - s.ego.trajectory.poses[0].yaw) - 0.5 * std::numbers::pi) < 1e-12);
}

TEST_CASE("near_miss_corpus sweeps gaps") {
  const auto corpus = near_miss_corpus(20, 0.05, 0.45, 7);
  REQUIRE(corpus.size() == 20);
  for (const auto& s : corpus) {
    const double gap = obb_separation(s.ego.box_at(0), s.agents[0].box_at(0));
    CHECK(gap > 0.05);
    CHECK(gap < 0.45);
  }
  CHECK_THROWS_AS(near_miss_corpus(1, 0.5, 0.1, 0), DomainError);
  CHECK(scenario_kind_from_string("near-miss") == ScenarioKind::kNearMiss);
  CHECK(scenario_kind_from_string("turn") == ScenarioKind::kTurn);
  CHECK_FALSE(scenario_kind_from_string("spiral"));
}

TEST_CASE("out-of-range geometry is rejected") {
  GenSpec spec;
  spec.ego_speed = 20.0;
  CHECK_THROWS_AS(generate(spec), DomainError);
  spec = {};
  spec.kind = ScenarioKind::kTurn;
  spec.turn_radius = 0.5;
  CHECK_THROWS_AS(generate(spec), DomainError);
}
