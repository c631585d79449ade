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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "drivekit/geometry.hpp"
#include "drivekit/relationship.hpp"

namespace drivekit {

inline constexpr std::size_t kRelationDirections = 2;  // longitudinal, lateral
inline constexpr std::size_t kRelationClasses = 3;

/// Per agent: [direction][class]. Direction 0 is longitudinal with classes
/// (front, back, no); direction 1 is lateral with classes (left, right, no).
using RelationDistribution = std::array<std::array<double, kRelationClasses>, kRelationDirections>;

struct FocalParams {
  std::vector<double> alpha;  // one weight per agent
  double gamma = 2.0;
};

/// Focal loss over the true-class probabilities, laid out [agent][direction]
/// in row-major order (so `true_class_probs.size() == alpha.size() * D` for
/// some direction count D). Natural log. Throws DomainError for a probability
/// outside (0, 1] or a bad parameter.
double ear_focal_loss(std::span<const double> true_class_probs, const FocalParams& params);

/// Picks the true-class entries out of full distributions and applies the loss
/// above. Distributions must sum to 1 within 1e-6 per (agent, direction).
double ear_focal_loss(std::span<const RelationDistribution> probs,
                      std::span<const RelationshipLabel> targets, const FocalParams& params);

/// Mean squared error over the N decoded kinematic quantities.
double kinematic_loss(std::span<const double> decoded, std::span<const double> actual);

struct ModeSelection {
  std::size_t index = 0;
  std::vector<double> average_displacement;  // per mode
};

/// Winner-take-all selection: the mode with the smallest mean displacement to
/// the ground truth; ties go to the lowest index.
ModeSelection closest_mode(std::span<const std::vector<Vec2>> predictions,
                           std::span<const Vec2> ground_truth);

}  // namespace drivekit
