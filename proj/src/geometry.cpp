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

#include "drivekit/geometry.hpp"

#include <algorithm>
#include <limits>

namespace drivekit {

double normalize_angle(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double a = std::remainder(angle, kTwoPi);
  if (a <= -std::numbers::pi) a += kTwoPi;
  return a;
}

Pose2 transform_to_frame(const Pose2& point, const Pose2& reference) {
  const Vec2 local = rotate(point.position() - reference.position(), -reference.yaw);
  return {local.x, local.y, normalize_angle(point.yaw - reference.yaw)};
}

std::vector<Pose2> transform_to_frame(std::span<const Pose2> points, const Pose2& reference) {
  std::vector<Pose2> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(transform_to_frame(p, reference));
  return out;
}

Pose2 transform_from_frame(const Pose2& local, const Pose2& reference) {
  const Vec2 g = rotate(local.position(), reference.yaw) + reference.position();
  return {g.x, g.y, normalize_angle(local.yaw + reference.yaw)};
}

double heading_from_positions(const Pose2& prev, const Pose2& curr, const HeadingPolicy& policy,
                              double carried) {
  const Vec2 d = curr.position() - prev.position();
  if (norm(d) < policy.min_displacement || (d.x == 0.0 && d.y == 0.0)) return carried;
  return std::atan2(d.y, d.x);
}

std::array<Vec2, 4> obb_corners(const OrientedBox& box) {
  const Vec2 c = box.center.position();
  const Vec2 u = 0.5 * box.length * box.axis_u();
  const Vec2 v = 0.5 * box.width * box.axis_v();
  return {c + u + v, c - u + v, c - u - v, c + u - v};
}

namespace {

struct Interval {
  double lo;
  double hi;
};

Interval project(const std::array<Vec2, 4>& corners, Vec2 axis) {
  Interval r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& p : corners) {
    const double d = dot(p, axis);
    r.lo = std::min(r.lo, d);
    r.hi = std::max(r.hi, d);
  }
  return r;
}

std::array<Vec2, 4> candidate_axes(const OrientedBox& a, const OrientedBox& b) {
  return {a.axis_u(), a.axis_v(), b.axis_u(), b.axis_v()};
}

double point_segment_distance(Vec2 p, Vec2 s0, Vec2 s1) {
  const Vec2 d = s1 - s0;
  const double len2 = dot(d, d);
  double t = len2 > 0.0 ? dot(p - s0, d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (s0 + t * d));
}

}  // namespace

bool obb_overlap(const OrientedBox& a, const OrientedBox& b) {
  const auto ca = obb_corners(a);
  const auto cb = obb_corners(b);
  for (const Vec2& axis : candidate_axes(a, b)) {
    const Interval ia = project(ca, axis);
    const Interval ib = project(cb, axis);
    if (ia.hi < ib.lo || ib.hi < ia.lo) return false;
  }
  return true;
}

double obb_separation(const OrientedBox& a, const OrientedBox& b) {
  const auto ca = obb_corners(a);
  const auto cb = obb_corners(b);
  if (obb_overlap(a, b)) {
    double depth = std::numeric_limits<double>::infinity();
    for (const Vec2& axis : candidate_axes(a, b)) {
      const Interval ia = project(ca, axis);
      const Interval ib = project(cb, axis);
      depth = std::min(depth, std::min(ia.hi, ib.hi) - std::max(ia.lo, ib.lo));
    }
    return -depth;
  }
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      best = std::min(best, point_segment_distance(ca[i], cb[j], cb[(j + 1) % 4]));
      best = std::min(best, point_segment_distance(cb[i], ca[j], ca[(j + 1) % 4]));
    }
  }
  return best;
}

double obb_separation_linf(const OrientedBox& a, const OrientedBox& b) {
  const auto ca = obb_corners(a);
  const auto cb = obb_corners(b);
  const std::array<Vec2, 6> axes = {Vec2{1.0, 0.0}, Vec2{0.0, 1.0}, a.axis_u(),
                                    a.axis_v(),     b.axis_u(),     b.axis_v()};
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec2& n : axes) {
    const Interval ia = project(ca, n);
    const Interval ib = project(cb, n);
    // Projection of the Minkowski difference a - b onto n.
    const double lo = ia.lo - ib.hi;
    const double hi = ia.hi - ib.lo;
    const double scale = std::abs(n.x) + std::abs(n.y);
    best = std::max(best, std::max(lo, -hi) / scale);
  }
  return best;
}

}  // namespace drivekit
