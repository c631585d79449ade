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

#include <span>
#include <string_view>
#include <vector>

#include "drivekit/scenario.hpp"

namespace drivekit {

enum class LateralRelation { kLeft = 0, kRight = 1, kNo = 2 };
enum class LongitudinalRelation { kFront = 0, kBack = 1, kNo = 2 };

std::string_view to_string(LateralRelation r);
std::string_view to_string(LongitudinalRelation r);

struct RelationshipLabel {
  LateralRelation lateral = LateralRelation::kNo;
  LongitudinalRelation longitudinal = LongitudinalRelation::kNo;

  friend bool operator==(const RelationshipLabel&, const RelationshipLabel&) = default;
};

struct RelationshipThresholds {
  double lateral_thresh = 2.0;       // metres
  double longitudinal_thresh = 5.0;  // metres
  double probe_accel = 2.0;          // m/s^2

  void validate() const;
};

enum class ProbeMode { kSpeedup, kSpeeddown };

/// Re-times `ego_future` along its own path with the per-step speed shifted by
/// +/- accel * elapsed time. Speed-down clamps at zero and stays stopped.
/// Positions past the end of the path continue along the final heading.
Trajectory probe_trajectory(const Trajectory& ego_future, ProbeMode mode, double accel);

/// Lateral (left/right) and longitudinal (front/back) labels of each agent
/// against the ego future. Later steps overwrite earlier ones. Throws
/// std::invalid_argument when an agent's horizon or dt differs from the ego's.
std::vector<RelationshipLabel> label_relationships(std::span<const Trajectory> agent_futures,
                                                   const Trajectory& ego_future,
                                                   const RelationshipThresholds& thresholds = {});

}  // namespace drivekit
