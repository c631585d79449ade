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

#include "drivekit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "drivekit/errors.hpp"
#include "drivekit/objectives.hpp"

namespace drivekit {

std::string_view to_string(HeadingMode mode) {
  return mode == HeadingMode::kDerived ? "derived" : "frozen-straight";
}

std::optional<HeadingMode> heading_mode_from_string(std::string_view s) {
  if (s == "derived") return HeadingMode::kDerived;
  if (s == "frozen-straight" || s == "frozen") return HeadingMode::kFrozenStraight;
  return std::nullopt;
}

void CollisionConfig::validate() const {
  if (!(ego_length > 0.0 && ego_width > 0.0)) throw DomainError("ego dimensions must be positive");
  if (!(grid_resolution > 0.0)) throw DomainError("grid resolution must be positive");
  if (!(range_x > 0.0 && range_y > 0.0)) throw DomainError("grid range must be positive");
  if (dilation_cells < 0) throw DomainError("dilation_cells must be >= 0");
  if (!std::is_sorted(horizon_marks.begin(), horizon_marks.end())) {
    throw DomainError("horizon marks must be sorted ascending");
  }
  for (double h : horizon_marks) {
    if (!(h > 0.0)) throw DomainError("horizon marks must be positive");
  }
}

std::size_t horizon_step(double seconds, double dt) {
  return static_cast<std::size_t>(std::llround(seconds / dt));
}

namespace {

void check_inputs(const Trajectory& plan, std::span<const Agent> agents) {
  if (plan.poses.empty()) throw ValidationError("plan", "plan has no poses");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (agents[i].trajectory.size() < plan.size()) {
      throw ValidationError("agents[" + std::to_string(i) + "].trajectory",
                            "insufficient agent horizon for the plan");
    }
  }
}

CollisionReport finish(std::vector<bool> step_flags, const CollisionConfig& config, double dt) {
  CollisionReport r;
  r.horizon_marks = config.horizon_marks;
  for (std::size_t t = 0; t < step_flags.size(); ++t) {
    if (step_flags[t]) {
      r.first_collision_step = t;
      break;
    }
  }
  for (double h : config.horizon_marks) {
    const std::size_t step = horizon_step(h, dt);
    if (step >= step_flags.size()) {
      throw DomainError("horizon mark " + std::to_string(h) + " s lies beyond the plan");
    }
    r.horizon_flags.push_back(r.first_collision_step && *r.first_collision_step <= step);
  }
  r.step_flags = std::move(step_flags);
  return r;
}

}  // namespace

CollisionReport sparse_collision(const Trajectory& plan, std::span<const Agent> agents,
                                 const CollisionConfig& config) {
  config.validate();
  check_inputs(plan, agents);
  std::vector<bool> flags(plan.size(), false);
  std::uint64_t tests = 0;
  double heading = plan.poses[0].yaw;
  for (std::size_t t = 1; t < plan.size(); ++t) {
    if (config.heading_mode == HeadingMode::kDerived) {
      heading = heading_from_positions(plan.poses[t - 1], plan.poses[t], config.heading_policy,
                                       heading);
    }
    const OrientedBox ego{{plan.poses[t].x, plan.poses[t].y, heading}, config.ego_length,
                          config.ego_width};
    for (const auto& agent : agents) {
      ++tests;
      if (obb_overlap(ego, agent.box_at(t))) {
        flags[t] = true;
        break;
      }
    }
  }
  CollisionReport r = finish(std::move(flags), config, plan.dt);
  r.work_units = tests;
  return r;
}

OccupancyChecker::OccupancyChecker(const CollisionConfig& config, simd::Kernels kernels)
    : config_(config), kernels_(kernels) {
  config_.validate();
  const double r = config_.grid_resolution;
  half_x_ = static_cast<std::int64_t>(std::floor(config_.range_x / r + 1e-9));
  half_y_ = static_cast<std::int64_t>(std::floor(config_.range_y / r + 1e-9));
  nx_ = 2 * half_x_ + 1;
  ny_ = 2 * half_y_ + 1;
  grid_.assign(static_cast<std::size_t>(nx_ * ny_), 0);
  stats_.cells_x = static_cast<std::size_t>(nx_);
  stats_.cells_y = static_cast<std::size_t>(ny_);
  stats_.grid_cells = grid_.size();
  stats_.grid_bytes = grid_.size() * sizeof(std::uint8_t);
}

OccupancyChecker::Rect OccupancyChecker::cell_bounds(const OrientedBox& box) const {
  const auto test = simd::make_box_cell_test(box, config_.grid_resolution);
  const double r = config_.grid_resolution;
  // One cell of slack each side; the kernel makes the exact decision.
  auto lo = [&](double c, double reach, std::int64_t half) {
    return std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor((c - reach) / r)) + half - 1);
  };
  auto hi = [&](double c, double reach, std::int64_t half, std::int64_t n) {
    return std::min<std::int64_t>(n - 1, static_cast<std::int64_t>(std::ceil((c + reach) / r)) + half + 1);
  };
  // Clamp far-away boxes before converting to integers.
  const double span_x = static_cast<double>(half_x_ + 2) * r;
  const double span_y = static_cast<double>(half_y_ + 2) * r;
  if (test.cx - test.reach_x > span_x || test.cx + test.reach_x < -span_x ||
      test.cy - test.reach_y > span_y || test.cy + test.reach_y < -span_y) {
    return {0, -1, 0, -1};
  }
  return {lo(test.cx, test.reach_x, half_x_), hi(test.cx, test.reach_x, half_x_, nx_),
          lo(test.cy, test.reach_y, half_y_), hi(test.cy, test.reach_y, half_y_, ny_)};
}

void OccupancyChecker::rasterize(const OrientedBox& box, const Rect& rect, std::uint8_t* base,
                                 std::int64_t stride, std::int64_t origin_i,
                                 std::int64_t origin_j) {
  const double r = config_.grid_resolution;
  const auto test = simd::make_box_cell_test(box, r);
  const auto count = static_cast<std::size_t>(rect.i1 - rect.i0 + 1);
  for (std::int64_t j = rect.j0; j <= rect.j1; ++j) {
    const double row_y = static_cast<double>(j - half_y_) * r;
    std::uint8_t* row = base + (j - origin_j) * stride + (rect.i0 - origin_i);
    stats_.cells_occupied += kernels_.mark_row(test, row_y, rect.i0 - half_x_, r, count, row);
    stats_.cells_tested += count;
  }
}

bool OccupancyChecker::ego_hits(const OrientedBox& ego) {
  const Rect er = cell_bounds(ego);
  if (er.empty()) return false;
  const std::int64_t w = er.i1 - er.i0 + 1;
  const std::int64_t h = er.j1 - er.j0 + 1;
  ego_mask_.assign(static_cast<std::size_t>(w * h), 0);
  const std::uint64_t occupied_before = stats_.cells_occupied;
  rasterize(ego, er, ego_mask_.data(), w, er.i0, er.j0);
  stats_.cells_occupied = occupied_before;

  const std::int64_t d = config_.dilation_cells;
  const Rect dr{std::max<std::int64_t>(0, er.i0 - d), std::min(nx_ - 1, er.i1 + d),
                std::max<std::int64_t>(0, er.j0 - d), std::min(ny_ - 1, er.j1 + d)};
  const std::int64_t dw = dr.i1 - dr.i0 + 1;
  const std::int64_t dh = dr.j1 - dr.j0 + 1;
  dilated_.assign(static_cast<std::size_t>(dw * dh), 0);
  for (std::int64_t j = 0; j < h; ++j) {
    for (std::int64_t i = 0; i < w; ++i) {
      if (ego_mask_[static_cast<std::size_t>(j * w + i)] == 0) continue;
      const std::int64_t gi = er.i0 + i;
      const std::int64_t gj = er.j0 + j;
      for (std::int64_t y = std::max(dr.j0, gj - d); y <= std::min(dr.j1, gj + d); ++y) {
        const std::int64_t x0 = std::max(dr.i0, gi - d);
        const std::int64_t x1 = std::min(dr.i1, gi + d);
        std::memset(dilated_.data() + (y - dr.j0) * dw + (x0 - dr.i0), 1,
                    static_cast<std::size_t>(x1 - x0 + 1));
      }
    }
  }
  for (std::int64_t y = 0; y < dh; ++y) {
    const std::uint8_t* grid_row = grid_.data() + (dr.j0 + y) * nx_ + dr.i0;
    if (kernels_.any_and(dilated_.data() + y * dw, grid_row, static_cast<std::size_t>(dw))) {
      return true;
    }
  }
  return false;
}

void OccupancyChecker::clear(const Rect& r) {
  for (std::int64_t j = r.j0; j <= r.j1; ++j) {
    std::memset(grid_.data() + j * nx_ + r.i0, 0, static_cast<std::size_t>(r.i1 - r.i0 + 1));
  }
}

CollisionReport OccupancyChecker::evaluate(const Trajectory& plan, std::span<const Agent> agents) {
  check_inputs(plan, agents);
  const std::uint64_t work_before = stats_.cells_tested;
  const Pose2 ref = plan.poses[0];
  std::vector<bool> flags(plan.size(), false);
  std::vector<Rect> dirty;
  for (std::size_t t = 1; t < plan.size(); ++t) {
    dirty.clear();
    for (const auto& agent : agents) {
      const OrientedBox box{transform_to_frame(agent.trajectory.poses[t], ref), agent.length,
                            agent.width};
      const Rect rect = cell_bounds(box);
      if (rect.empty()) continue;
      rasterize(box, rect, grid_.data(), nx_, 0, 0);
      dirty.push_back(rect);
    }
    // Legacy footprint: heading frozen at the step-0 heading, i.e. axis-aligned
    // in the step-0 ego frame.
    const Pose2 p = transform_to_frame(plan.poses[t], ref);
    const OrientedBox ego{{p.x, p.y, 0.0}, config_.ego_length, config_.ego_width};
    flags[t] = !dirty.empty() && ego_hits(ego);
    for (const Rect& r : dirty) clear(r);
  }
  CollisionReport r = finish(std::move(flags), config_, plan.dt);
  r.work_units = stats_.cells_tested - work_before;
  return r;
}

CollisionReport occupancy_collision(const Trajectory& plan, std::span<const Agent> agents,
                                    const CollisionConfig& config) {
  OccupancyChecker checker(config);
  return checker.evaluate(plan, agents);
}

L2Report planning_l2(const Trajectory& plan, const Trajectory& gt,
                     std::span<const double> horizon_marks) {
  if (plan.dt != gt.dt) throw DomainError("planning_l2: plan and ground truth differ in dt");
  L2Report r;
  r.horizon_marks.assign(horizon_marks.begin(), horizon_marks.end());
  for (double h : horizon_marks) {
    const std::size_t step = horizon_step(h, plan.dt);
    if (step >= plan.size() || step >= gt.size()) {
      throw DomainError("planning_l2: horizon " + std::to_string(h) + " s beyond trajectory");
    }
    r.values.push_back(norm(plan.poses[step].position() - gt.poses[step].position()));
  }
  double sum = 0.0;
  for (double v : r.values) sum += v;
  r.average = r.values.empty() ? 0.0 : sum / static_cast<double>(r.values.size());
  return r;
}

MotionErrorReport motion_errors(std::span<const std::vector<Vec2>> predictions,
                                std::span<const Vec2> gt, double miss_threshold) {
  const ModeSelection sel = closest_mode(predictions, gt);
  MotionErrorReport r;
  r.miss_threshold = miss_threshold;
  r.min_ade = sel.average_displacement[sel.index];
  r.min_fde = std::numeric_limits<double>::infinity();
  for (const auto& mode : predictions) {
    r.min_fde = std::min(r.min_fde, norm(mode.back() - gt.back()));
  }
  r.miss = r.min_fde > miss_threshold;
  return r;
}

}  // namespace drivekit
