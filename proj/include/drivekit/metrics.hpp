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
#include <span>
#include <string_view>
#include <vector>

#include "drivekit/geometry.hpp"
#include "drivekit/scenario.hpp"
#include "drivekit/simd/raster_kernels.hpp"

namespace drivekit {

enum class HeadingMode {
  kDerived,         // ego heading from consecutive plan positions
  kFrozenStraight,  // initial heading held for the whole plan (legacy)
};

std::string_view to_string(HeadingMode mode);
std::optional<HeadingMode> heading_mode_from_string(std::string_view s);

struct CollisionConfig {
  double ego_length = kDefaultEgoLength;
  double ego_width = kDefaultEgoWidth;
  double grid_resolution = 0.5;  // occupancy baseline only
  HeadingMode heading_mode = HeadingMode::kDerived;
  std::vector<double> horizon_marks = {1.0, 2.0, 3.0};  // seconds
  double range_x = 51.2;  // occupancy grid covers [-range, range] around the ego
  double range_y = 51.2;
  int dilation_cells = 1;  // Chebyshev dilation of occupied cells
  HeadingPolicy heading_policy;

  void validate() const;
};

struct CollisionReport {
  std::vector<double> horizon_marks;
  std::vector<bool> horizon_flags;  // cumulative: any collision up to the mark
  std::vector<bool> step_flags;     // indexed by plan step; step 0 is never evaluated
  std::optional<std::size_t> first_collision_step;
  std::uint64_t work_units = 0;  // box-pair tests (sparse) or cells tested (occupancy)
};

/// Step index for a horizon mark, round(h / dt).
std::size_t horizon_step(double seconds, double dt);

/// Exact metric: ego boxes along the plan against agent boxes at the same step
/// via obb_overlap. Throws ValidationError when an agent trajectory is shorter
/// than the plan, DomainError when a horizon mark lies beyond the plan.
CollisionReport sparse_collision(const Trajectory& plan, std::span<const Agent> agents,
                                 const CollisionConfig& config);

/// Work counters of the occupancy baseline.
struct OccupancyStats {
  std::size_t cells_x = 0;
  std::size_t cells_y = 0;
  std::size_t grid_cells = 0;        // cells_x * cells_y
  std::size_t grid_bytes = 0;        // dense bitmap footprint
  std::uint64_t cells_tested = 0;    // cumulative kernel work
  std::uint64_t cells_occupied = 0;  // cumulative agent hits
};

/// Legacy occupancy-grid collision check. Per step, agent boxes are
/// conservatively rasterized (a cell counts when its closed square touches the
/// box) onto a grid in the plan's step-0 ego frame, the occupied set is dilated
/// by `dilation_cells`, and the heading-frozen ego footprint is tested against
/// it. The grid is allocated once and reused across evaluate() calls.
class OccupancyChecker {
 public:
  explicit OccupancyChecker(const CollisionConfig& config,
                            simd::Kernels kernels = simd::active_kernels());

  CollisionReport evaluate(const Trajectory& plan, std::span<const Agent> agents);

  const OccupancyStats& stats() const { return stats_; }
  const CollisionConfig& config() const { return config_; }
  /// Grid cell index (column or row) whose centre lies at `coord`, i.e. the
  /// half-width offset of the lattice.
  std::int64_t half_cells_x() const { return half_x_; }
  std::int64_t half_cells_y() const { return half_y_; }

 private:
  struct Rect {
    std::int64_t i0, i1, j0, j1;  // inclusive cell bounds, clipped to the grid
    bool empty() const { return i0 > i1 || j0 > j1; }
  };

  Rect cell_bounds(const OrientedBox& box) const;
  void rasterize(const OrientedBox& box, const Rect& r, std::uint8_t* base, std::int64_t stride,
                 std::int64_t origin_i, std::int64_t origin_j);
  bool ego_hits(const OrientedBox& ego);
  void clear(const Rect& r);

  CollisionConfig config_;
  simd::Kernels kernels_;
  std::int64_t half_x_ = 0;
  std::int64_t half_y_ = 0;
  std::int64_t nx_ = 0;
  std::int64_t ny_ = 0;
  std::vector<std::uint8_t> grid_;
  std::vector<std::uint8_t> ego_mask_;
  std::vector<std::uint8_t> dilated_;
  OccupancyStats stats_;
};

/// One-shot convenience over OccupancyChecker.
CollisionReport occupancy_collision(const Trajectory& plan, std::span<const Agent> agents,
                                    const CollisionConfig& config);

struct L2Report {
  std::vector<double> horizon_marks;
  std::vector<double> values;  // displacement at each mark, metres
  double average = 0.0;
};

/// Plan-vs-ground-truth displacement at each horizon mark.
L2Report planning_l2(const Trajectory& plan, const Trajectory& gt,
                     std::span<const double> horizon_marks);

inline constexpr double kDefaultMissThreshold = 2.0;

struct MotionErrorReport {
  double min_ade = 0.0;
  double min_fde = 0.0;
  bool miss = false;
  double miss_threshold = kDefaultMissThreshold;
};

MotionErrorReport motion_errors(std::span<const std::vector<Vec2>> predictions,
                                std::span<const Vec2> gt,
                                double miss_threshold = kDefaultMissThreshold);

}  // namespace drivekit
