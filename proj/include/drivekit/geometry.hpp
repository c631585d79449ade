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
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace drivekit {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Rotates `v` counter-clockwise by `angle` radians.
inline Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Wraps an angle into (-pi, pi].
double normalize_angle(double angle);

/// Planar pose. Constructed poses keep yaw in (-pi, pi]; use make_pose when
/// the yaw may be out of range.
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;

  Vec2 position() const { return {x, y}; }
  friend bool operator==(const Pose2&, const Pose2&) = default;
};

inline Pose2 make_pose(double x, double y, double yaw) { return {x, y, normalize_angle(yaw)}; }

/// Expresses `point` in the frame whose origin and orientation are `reference`.
Pose2 transform_to_frame(const Pose2& point, const Pose2& reference);
std::vector<Pose2> transform_to_frame(std::span<const Pose2> points, const Pose2& reference);

/// Inverse of transform_to_frame: maps a pose given in `reference`'s frame back
/// into the frame `reference` itself is expressed in.
Pose2 transform_from_frame(const Pose2& local, const Pose2& reference);

/// Governs heading recovery from consecutive positions.
struct HeadingPolicy {
  double min_displacement = 1e-3;  // below this the previous heading is kept
  double initial_heading = 0.0;
};

/// atan2 of the displacement prev -> curr, or `carried` when the step is
/// shorter than policy.min_displacement.
double heading_from_positions(const Pose2& prev, const Pose2& curr, const HeadingPolicy& policy,
                              double carried);

/// Oriented bounding box. `length` runs along the heading, `width` across it.
struct OrientedBox {
  Pose2 center;
  double length = 0.0;
  double width = 0.0;

  bool valid() const { return length > 0.0 && width > 0.0; }
  Vec2 axis_u() const { return {std::cos(center.yaw), std::sin(center.yaw)}; }
  Vec2 axis_v() const { return {-std::sin(center.yaw), std::cos(center.yaw)}; }

  friend bool operator==(const OrientedBox&, const OrientedBox&) = default;
};

/// Corners in counter-clockwise order starting at front-left.
std::array<Vec2, 4> obb_corners(const OrientedBox& box);

/// Closed-set separating-axis overlap test; touching boxes overlap.
bool obb_overlap(const OrientedBox& a, const OrientedBox& b);

/// Euclidean distance between the boxes when disjoint; minus the minimum
/// separating-axis penetration depth when they overlap.
double obb_separation(const OrientedBox& a, const OrientedBox& b);

/// Signed L-infinity separation: min ||p - q||_inf over p in a, q in b when
/// disjoint; non-positive when the boxes overlap.
double obb_separation_linf(const OrientedBox& a, const OrientedBox& b);

}  // namespace drivekit
