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

// Independent reference implementations used only by tests. Nothing here may
// call into the code path it is checking.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "drivekit/geometry.hpp"

namespace drivekit::oracle {

/// de Casteljau evaluation by repeated linear interpolation.
inline Vec2 de_casteljau(std::vector<Vec2> pts, double t) {
  for (std::size_t level = pts.size(); level > 1; --level) {
    for (std::size_t i = 0; i + 1 < level; ++i) {
      pts[i] = {(1.0 - t) * pts[i].x + t * pts[i + 1].x, (1.0 - t) * pts[i].y + t * pts[i + 1].y};
    }
  }
  return pts.front();
}

/// Points on the boundary of `b` spaced at most `spacing` apart, built from
/// the box pose directly.
inline std::vector<Vec2> boundary_samples(const OrientedBox& b, double spacing) {
  const double c = std::cos(b.center.yaw);
  const double s = std::sin(b.center.yaw);
  auto world = [&](double a, double w) {
    return Vec2{b.center.x + c * a - s * w, b.center.y + s * a + c * w};
  };
  std::vector<Vec2> out;
  const double hl = 0.5 * b.length;
  const double hw = 0.5 * b.width;
  const int nl = static_cast<int>(std::ceil(b.length / spacing));
  const int nw = static_cast<int>(std::ceil(b.width / spacing));
  for (int i = 0; i <= nl; ++i) {
    const double a = -hl + b.length * i / nl;
    out.push_back(world(a, hw));
    out.push_back(world(a, -hw));
  }
  for (int j = 0; j <= nw; ++j) {
    const double w = -hw + b.width * j / nw;
    out.push_back(world(hl, w));
    out.push_back(world(-hl, w));
  }
  return out;
}

/// Box membership with the rotation precomputed.
struct BoxFrame {
  double cx, cy, c, s, hl, hw;
  explicit BoxFrame(const OrientedBox& b)
      : cx(b.center.x), cy(b.center.y), c(std::cos(b.center.yaw)), s(std::sin(b.center.yaw)),
        hl(0.5 * b.length), hw(0.5 * b.width) {}
  bool contains(Vec2 p) const {
    const double dx = p.x - cx;
    const double dy = p.y - cy;
    return std::abs(c * dx + s * dy) <= hl && std::abs(-s * dx + c * dy) <= hw;
  }
};

/// Two rectangles overlap iff a boundary sample of one lies in the other (at
/// the sampling resolution) or one contains the other.
inline bool overlap_by_sampling(const OrientedBox& a, const OrientedBox& b, double spacing) {
  const double ra = 0.5 * std::hypot(a.length, a.width);
  const double rb = 0.5 * std::hypot(b.length, b.width);
  if (std::hypot(a.center.x - b.center.x, a.center.y - b.center.y) > ra + rb) return false;
  const BoxFrame fa(a);
  const BoxFrame fb(b);
  if (fb.contains(a.center.position()) || fa.contains(b.center.position())) return true;
  for (const Vec2& p : boundary_samples(a, spacing)) {
    if (fb.contains(p)) return true;
  }
  for (const Vec2& p : boundary_samples(b, spacing)) {
    if (fa.contains(p)) return true;
  }
  return false;
}

inline OrientedBox grown(const OrientedBox& b, double margin) {
  return {b.center, b.length + 2.0 * margin, b.width + 2.0 * margin};
}

inline double cross_entropy(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p) s -= std::log(v);
  return s;
}

/// Minimal reference model of the two-level memory bookkeeping.
struct ReferenceBank {
  int max_history;
  int expiry;
  int scene_frames = 0;
  std::int64_t next_id = 1;
  struct Inst {
    int history = 0;
    int misses = 0;
  };
  std::map<std::int64_t, Inst> live;

  /// `matched` lists live ids observed this frame; `fresh` new promotions.
  std::vector<std::int64_t> step(const std::vector<std::int64_t>& matched, int fresh) {
    scene_frames = std::min(scene_frames + 1, max_history);
    for (auto& [id, inst] : live) {
      if (std::find(matched.begin(), matched.end(), id) != matched.end()) {
        inst.history = std::min(inst.history + 1, max_history);
        inst.misses = 0;
      } else {
        inst.misses += 1;
      }
    }
    std::vector<std::int64_t> ids;
    for (int i = 0; i < fresh; ++i) {
      live[next_id] = Inst{1, 0};
      ids.push_back(next_id++);
    }
    return ids;
  }

  std::vector<std::int64_t> expire() {
    std::vector<std::int64_t> gone;
    for (auto it = live.begin(); it != live.end();) {
      if (it->second.misses >= expiry) {
        gone.push_back(it->first);
        it = live.erase(it);
      } else {
        ++it;
      }
    }
    return gone;
  }
};

}  // namespace drivekit::oracle
