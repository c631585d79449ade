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

#include "drivekit/relationship.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drivekit {

std::string_view to_string(LateralRelation r) {
  switch (r) {
    case LateralRelation::kLeft: return "left";
    case LateralRelation::kRight: return "right";
    case LateralRelation::kNo: break;
  }
  return "no";
}

std::string_view to_string(LongitudinalRelation r) {
  switch (r) {
    case LongitudinalRelation::kFront: return "front";
    case LongitudinalRelation::kBack: return "back";
    case LongitudinalRelation::kNo: break;
  }
  return "no";
}

void RelationshipThresholds::validate() const {
  if (!(lateral_thresh >= 0.0 && longitudinal_thresh >= 0.0 && probe_accel >= 0.0)) {
    throw std::invalid_argument("relationship thresholds must be non-negative");
  }
}

namespace {

// Distance covered over [t0, t1] at speed v + sign * accel * t. Speed-down
// stops for good once the speed reaches zero.
double covered(double v, double accel, bool speedup, double t0, double t1, bool& stopped) {
  if (speedup) return v * (t1 - t0) + 0.5 * accel * (t1 * t1 - t0 * t0);
  if (stopped) return 0.0;
  const double t_stop = v / accel;
  if (t_stop >= t1) return v * (t1 - t0) - 0.5 * accel * (t1 * t1 - t0 * t0);
  stopped = true;
  if (t_stop <= t0) return 0.0;
  return v * (t_stop - t0) - 0.5 * accel * (t_stop * t_stop - t0 * t0);
}

}  // namespace

Trajectory probe_trajectory(const Trajectory& ego_future, ProbeMode mode, double accel) {
  const auto& poses = ego_future.poses;
  if (poses.size() < 2) throw std::invalid_argument("probe_trajectory: need at least 2 poses");
  if (accel < 0.0) throw std::invalid_argument("probe_trajectory: accel is a magnitude");
  const double dt = ego_future.dt;

  std::vector<double> seg(poses.size(), 0.0);
  std::vector<double> arc(poses.size(), 0.0);
  for (std::size_t k = 1; k < poses.size(); ++k) {
    seg[k] = norm(poses[k].position() - poses[k - 1].position());
    arc[k] = arc[k - 1] + seg[k];
  }
  const double total = arc.back();
  if (total == 0.0 || accel == 0.0) return ego_future;

  // Direction used for extrapolation: the last segment with non-zero length.
  Vec2 final_dir{};
  for (std::size_t k = poses.size() - 1; k >= 1; --k) {
    if (seg[k] > 0.0) {
      final_dir = (1.0 / seg[k]) * (poses[k].position() - poses[k - 1].position());
      break;
    }
  }

  auto pose_at = [&](double s) -> Pose2 {
    if (s == total) return poses.back();
    if (s > total) {
      const Vec2 p = poses.back().position() + (s - total) * final_dir;
      return make_pose(p.x, p.y, std::atan2(final_dir.y, final_dir.x));
    }
    const auto it = std::lower_bound(arc.begin(), arc.end(), s);
    const auto j = static_cast<std::size_t>(it - arc.begin());
    if (*it == s) return poses[j];
    const double f = (s - arc[j - 1]) / seg[j];
    const Vec2 d = poses[j].position() - poses[j - 1].position();
    const Vec2 p = poses[j - 1].position() + f * d;
    return make_pose(p.x, p.y, std::atan2(d.y, d.x));
  };

  Trajectory out;
  out.dt = dt;
  out.poses.push_back(poses.front());
  const bool speedup = mode == ProbeMode::kSpeedup;
  bool stopped = false;
  double s = 0.0;
  for (std::size_t k = 1; k < poses.size(); ++k) {
    const double t0 = static_cast<double>(k - 1) * dt;
    const double t1 = static_cast<double>(k) * dt;
    const double v = seg[k] / dt;
    s += std::max(covered(v, accel, speedup, t0, t1, stopped), 0.0);
    out.poses.push_back(pose_at(s));
  }
  out.z = ego_future.z;
  return out;
}

std::vector<RelationshipLabel> label_relationships(std::span<const Trajectory> agent_futures,
                                                   const Trajectory& ego_future,
                                                   const RelationshipThresholds& thresholds) {
  thresholds.validate();
  for (const auto& a : agent_futures) {
    if (a.size() != ego_future.size()) {
      throw std::invalid_argument("label_relationships: horizon mismatch");
    }
    if (a.dt != ego_future.dt) throw std::invalid_argument("label_relationships: dt mismatch");
  }
  std::vector<RelationshipLabel> labels(agent_futures.size());
  if (ego_future.size() == 0) return labels;

  const bool can_probe = ego_future.size() >= 2;
  const Trajectory up = can_probe
                            ? probe_trajectory(ego_future, ProbeMode::kSpeedup, thresholds.probe_accel)
                            : ego_future;
  const Trajectory down =
      can_probe ? probe_trajectory(ego_future, ProbeMode::kSpeeddown, thresholds.probe_accel)
                : ego_future;

  auto within = [&](const Pose2& agent, const Pose2& probe) {
    const Pose2 local = transform_to_frame(agent, probe);
    return std::abs(local.x) < thresholds.longitudinal_thresh &&
           std::abs(local.y) < thresholds.lateral_thresh;
  };

  for (std::size_t i = 0; i < agent_futures.size(); ++i) {
    RelationshipLabel& label = labels[i];
    for (std::size_t t = 0; t < ego_future.size(); ++t) {
      const Pose2& agent = agent_futures[i].poses[t];
      const Pose2 local = transform_to_frame(agent, ego_future.poses[t]);
      if (std::abs(local.y) < thresholds.lateral_thresh) {
        label.lateral = local.y >= 0.0 ? LateralRelation::kLeft : LateralRelation::kRight;
      }
      if (within(agent, up.poses[t])) label.longitudinal = LongitudinalRelation::kFront;
      if (within(agent, down.poses[t])) label.longitudinal = LongitudinalRelation::kBack;
    }
  }
  return labels;
}

}  // namespace drivekit
