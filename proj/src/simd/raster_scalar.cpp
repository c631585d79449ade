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

#include <cmath>

#include "drivekit/simd/raster_kernels.hpp"

namespace drivekit::simd {

BoxCellTest make_box_cell_test(const OrientedBox& box, double resolution) {
  BoxCellTest t;
  const double h = 0.5 * resolution;
  const double hl = 0.5 * box.length;
  const double hw = 0.5 * box.width;
  t.cx = box.center.x;
  t.cy = box.center.y;
  const Vec2 u = box.axis_u();
  const Vec2 v = box.axis_v();
  t.ux = u.x;
  t.uy = u.y;
  t.vx = v.x;
  t.vy = v.y;
  t.reach_x = std::abs(u.x) * hl + std::abs(v.x) * hw + h;
  t.reach_y = std::abs(u.y) * hl + std::abs(v.y) * hw + h;
  t.reach_u = hl + h * (std::abs(u.x) + std::abs(u.y));
  t.reach_v = hw + h * (std::abs(v.x) + std::abs(v.y));
  return t;
}

std::string_view to_string(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

namespace scalar {

std::size_t mark_row(const BoxCellTest& t, double row_y, std::int64_t first_index,
                     double resolution, std::size_t count, std::uint8_t* out) {
  const double dy = row_y - t.cy;
  const double uy_dy = t.uy * dy;
  const double vy_dy = t.vy * dy;
  const bool row_ok = std::abs(dy) <= t.reach_y;
  std::size_t hits = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double x = static_cast<double>(first_index + static_cast<std::int64_t>(k)) * resolution;
    const double dx = x - t.cx;
    const double pu = t.ux * dx + uy_dy;
    const double pv = t.vx * dx + vy_dy;
    const bool hit = row_ok && std::abs(dx) <= t.reach_x && std::abs(pu) <= t.reach_u &&
                     std::abs(pv) <= t.reach_v;
    out[k] |= static_cast<std::uint8_t>(hit);
    hits += hit;
  }
  return hits;
}

bool any_and(const std::uint8_t* a, const std::uint8_t* b, std::size_t count) {
  for (std::size_t k = 0; k < count; ++k) {
    if (a[k] != 0 && b[k] != 0) return true;
  }
  return false;
}

}  // namespace scalar
}  // namespace drivekit::simd
