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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drivekit/geometry.hpp"

namespace drivekit {

enum class MapClass { kDivider = 0, kCross = 1, kRoadSegment = 2, kLane = 3 };
inline constexpr std::size_t kNumMapClasses = 4;

std::string_view to_string(MapClass c);
std::optional<MapClass> map_class_from_string(std::string_view s);

/// One Bezier piece: degree n with n + 1 control points.
struct BezierPiece {
  int degree = 1;
  std::vector<Vec2> control_points;

  friend bool operator==(const BezierPiece&, const BezierPiece&) = default;
};

struct MapElement {
  MapClass map_class = MapClass::kLane;
  std::vector<BezierPiece> pieces;

  friend bool operator==(const MapElement&, const MapElement&) = default;
};

struct PieceBudget {
  int max_pieces = 1;
  int max_degree = 1;

  friend bool operator==(const PieceBudget&, const PieceBudget&) = default;
};

/// Per-class <max pieces, max degree>.
class BezierClassConfig {
 public:
  BezierClassConfig();

  const PieceBudget& operator[](MapClass c) const { return budgets_[static_cast<std::size_t>(c)]; }
  void set(MapClass c, PieceBudget budget);

 private:
  std::array<PieceBudget, kNumMapClasses> budgets_;
};

/// Table defaults: divider <3,2>, cross <1,1>, road segment <7,3>, lane <7,3>.
PieceBudget class_config(MapClass c, const BezierClassConfig& config = {});

inline constexpr double kContinuityTolerance = 1e-9;
inline constexpr int kDefaultSamplesPerPiece = 20;

/// Bernstein basis weight C(n,i) t^i (1-t)^(n-i). Throws DomainError outside
/// 0 <= i <= n, 0 <= t <= 1.
double bernstein(int i, int n, double t);

/// Bernstein-form evaluation of a piece at t in [0, 1].
Vec2 eval_piece(const BezierPiece& piece, double t);

/// t-uniform sampling, `samples_per_piece` points per piece, joints emitted once.
std::vector<Vec2> sample_element(const MapElement& element,
                                 int samples_per_piece = kDefaultSamplesPerPiece);

/// Checks degree/control-count agreement, class budgets and C0 continuity.
/// Throws ValidationError with `path` prefixed to the field name.
void validate_element(const MapElement& element, const BezierClassConfig& config,
                      const std::string& path = "map_element");

}  // namespace drivekit
