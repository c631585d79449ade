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
#include <string>
#include <string_view>
#include <vector>

#include "drivekit/bezier_map.hpp"
#include "drivekit/geometry.hpp"

namespace drivekit {

enum class AgentClass { kVehicle = 0, kPedestrian = 1, kCyclist = 2, kOther = 3 };

std::string_view to_string(AgentClass c);
std::optional<AgentClass> agent_class_from_string(std::string_view s);

/// Timed pose sequence. `z` is either empty or parallel to `poses`; it is
/// carried through I/O and transforms but never used by planar geometry.
struct Trajectory {
  std::vector<Pose2> poses;
  std::vector<double> z;
  double dt = 0.5;

  std::size_t size() const { return poses.size(); }
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct Agent {
  std::int64_t id = 0;
  AgentClass agent_class = AgentClass::kVehicle;
  double length = 0.0;
  double width = 0.0;
  Trajectory trajectory;

  OrientedBox box_at(std::size_t step) const { return {trajectory.poses.at(step), length, width}; }
  friend bool operator==(const Agent&, const Agent&) = default;
};

inline constexpr double kDefaultEgoLength = 4.08;
inline constexpr double kDefaultEgoWidth = 1.73;

struct ScenarioConfig {
  double range_x = 51.2;  // evaluation extent is [-range, range]
  double range_y = 51.2;
  double dt = 0.5;
  int plan_horizon = 6;
  int predict_horizon = 12;
  double ego_length = kDefaultEgoLength;
  double ego_width = kDefaultEgoWidth;

  void validate() const;
};

struct Scenario {
  Agent ego;
  std::vector<Agent> agents;
  std::vector<MapElement> map_elements;
  int horizon_steps = 6;
  double dt = 0.5;
  /// Planner output for the ego; when absent the ego trajectory is the plan.
  std::optional<Trajectory> plan;

  const Trajectory& plan_or_ego() const { return plan ? *plan : ego.trajectory; }
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// First `poses` poses of `t` (all of them when shorter).
Trajectory prefix(const Trajectory& t, std::size_t poses);

/// The plan evaluated by the metrics: plan_or_ego() cut to horizon_steps + 1.
Trajectory evaluation_plan(const Scenario& scenario);

/// Throws ValidationError naming the offending field.
void validate_scenario(const Scenario& scenario, const BezierClassConfig& bezier = {});

/// Parses and validates the JSON interchange format. Throws ParseError or
/// ValidationError.
Scenario load_scenario(std::string_view bytes, const BezierClassConfig& bezier = {});

/// Parses a single map element object, a list of elements, or the
/// `map_elements` of a scenario document.
std::vector<MapElement> load_map_elements(std::string_view bytes,
                                          const BezierClassConfig& bezier = {});

/// Serializes with full double precision; load_scenario inverts it exactly.
std::string save_scenario(const Scenario& scenario);

/// Re-expresses every pose (ego, agents, plan, map control points) in the ego
/// pose at `step`. Throws std::out_of_range for a bad step.
Scenario to_ego_frame(const Scenario& scenario, std::size_t step);

}  // namespace drivekit
