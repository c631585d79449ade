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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "drivekit/scenario.hpp"

namespace drivekit {

enum class ScenarioKind { kNearMiss, kTurn, kCrossing, kStraight, kRandom };

std::string_view to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_kind_from_string(std::string_view s);

struct GenSpec {
  ScenarioKind kind = ScenarioKind::kNearMiss;
  std::uint64_t seed = 0;
  double gap = 0.3;             // near_miss: lateral free gap; turn: closest corner gap (m)
  double turn_radius = 10.0;    // m
  double ego_speed = 5.0;       // m/s (turn derives its own so the arc spans the plan)
  double agent_speed = 5.0;     // m/s for crossing and straight agents
  int agent_count = 6;          // straight and random kinds
  double crossing_time = 2.0;   // s at which the ego reaches the crossing point
  double crossing_offset = 0.0; // s the agent arrives after the ego (negative: before)
  bool global_placement = true; // seeded rigid placement in the world frame
};

/// Builds a validated scenario. Deterministic in (spec, config). Throws
/// DomainError for parameters that produce out-of-range geometry.
Scenario generate(const GenSpec& spec, const ScenarioConfig& config = {});

/// Near-miss scenarios with gaps drawn uniformly from (gap_min, gap_max).
std::vector<Scenario> near_miss_corpus(std::size_t count, double gap_min, double gap_max,
                                       std::uint64_t seed, const ScenarioConfig& config = {});

}  // namespace drivekit
