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

#include "drivekit/motion_geometry.hpp"

#include <limits>
#include <random>
#include <stdexcept>

namespace drivekit {

namespace {

using Flat = std::vector<double>;

double sq_dist(const Flat& a, const Flat& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

std::vector<Flat> seed_centers(const std::vector<Flat>& pts, std::size_t k, std::mt19937_64& rng) {
  std::vector<Flat> centers;
  centers.reserve(k);
  std::uniform_int_distribution<std::size_t> first(0, pts.size() - 1);
  centers.push_back(pts[first(rng)]);
  std::vector<double> d2(pts.size(), std::numeric_limits<double>::infinity());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      d2[i] = std::min(d2[i], sq_dist(pts[i], centers.back()));
      total += d2[i];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double acc = 0.0;
      pick = pts.size() - 1;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        acc += d2[i];
        if (acc > target && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
      while (d2[pick] == 0.0 && pick > 0) --pick;
    }
    centers.push_back(pts[pick]);
  }
  return centers;
}

}  // namespace

AnchorSet cluster_anchors(std::span<const std::vector<Vec2>> trajectories, std::size_t k,
                          int max_iters, std::uint64_t seed) {
  if (k == 0) throw std::invalid_argument("cluster_anchors: k must be positive");
  if (trajectories.size() < k) throw std::invalid_argument("cluster_anchors: fewer trajectories than k");
  const std::size_t steps = trajectories.front().size();
  if (steps == 0) throw std::invalid_argument("cluster_anchors: empty trajectory");

  std::vector<Flat> pts;
  pts.reserve(trajectories.size());
  for (const auto& t : trajectories) {
    if (t.size() != steps) throw std::invalid_argument("cluster_anchors: trajectories differ in length");
    Flat f;
    f.reserve(2 * steps);
    for (const auto& p : t) {
      f.push_back(p.x);
      f.push_back(p.y);
    }
    pts.push_back(std::move(f));
  }

  std::mt19937_64 rng(seed);
  std::vector<Flat> centers = seed_centers(pts, k, rng);

  AnchorSet result;
  result.assignment.assign(pts.size(), 0);
  auto assign = [&](std::vector<std::size_t>& out) {
    double inertia = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d = sq_dist(pts[i], centers[c]);
        if (d < best) {
          best = d;
          out[i] = c;
        }
      }
      inertia += best;
    }
    return inertia;
  };
  auto record = [&](double inertia) {
    if (!result.inertia_history.empty()) {
      const double prev = result.inertia_history.back();
      if (inertia > prev + 1e-12 * (1.0 + prev)) {
        throw std::logic_error("cluster_anchors: inertia increased");
      }
    }
    result.inertia_history.push_back(inertia);
  };

  record(assign(result.assignment));
  for (int it = 0; it < max_iters; ++it) {
    // Update step; empty clusters keep their previous centre.
    std::vector<Flat> sums(k, Flat(2 * steps, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::size_t c = result.assignment[i];
      ++counts[c];
      for (std::size_t d = 0; d < pts[i].size(); ++d) sums[c][d] += pts[i][d];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t d = 0; d < sums[c].size(); ++d) {
        centers[c][d] = sums[c][d] / static_cast<double>(counts[c]);
      }
    }
    ++result.iterations;
    std::vector<std::size_t> next(pts.size(), 0);
    record(assign(next));
    const bool stable = next == result.assignment;
    result.assignment = std::move(next);
    if (stable) break;
  }

  result.anchors.reserve(k);
  for (const auto& c : centers) {
    std::vector<Vec2> traj(steps);
    for (std::size_t s = 0; s < steps; ++s) traj[s] = {c[2 * s], c[2 * s + 1]};
    result.anchors.push_back(std::move(traj));
  }
  return result;
}

}  // namespace drivekit
