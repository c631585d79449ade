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
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "drivekit/bezier_map.hpp"
#include "drivekit/geometry.hpp"

namespace drivekit {

template <std::size_t D>
using PointN = std::array<double, D>;

template <std::size_t D>
PointN<D> operator-(const PointN<D>& a, const PointN<D>& b) {
  PointN<D> r{};
  for (std::size_t i = 0; i < D; ++i) r[i] = a[i] - b[i];
  return r;
}

/// Displacements feeding the memory-slot temporal encoding. `history[k - 1]`
/// is the prediction made k frames ago, already in the current ego frame.
/// Returns {v_j - v_k : j >= k} with 1-based step indices, so the result has
/// L - k + 1 entries.
template <std::size_t D>
std::vector<PointN<D>> memory_displacements(std::span<const std::vector<PointN<D>>> history,
                                            std::size_t k) {
  if (k < 1 || k > history.size()) {
    throw std::out_of_range("memory_displacements: slot outside available history");
  }
  const auto& traj = history[k - 1];
  if (k > traj.size()) throw std::out_of_range("memory_displacements: slot beyond horizon");
  std::vector<PointN<D>> out;
  out.reserve(traj.size() - k + 1);
  for (std::size_t j = k; j <= traj.size(); ++j) out.push_back(traj[j - 1] - traj[k - 1]);
  return out;
}

/// Displacements of the current prediction from the agent's current position:
/// {v_j - v_0 : 1 <= j <= M - k}. Empty for k == M.
template <std::size_t D>
std::vector<PointN<D>> current_displacements(std::span<const PointN<D>> current,
                                             const PointN<D>& origin, std::size_t memory_length,
                                             std::size_t k) {
  if (k < 1 || k > memory_length) {
    throw std::out_of_range("current_displacements: slot outside [1, M]");
  }
  const std::size_t count = memory_length - k;
  if (count > current.size()) {
    throw std::out_of_range("current_displacements: M - k exceeds the prediction horizon");
  }
  std::vector<PointN<D>> out;
  out.reserve(count);
  for (std::size_t j = 1; j <= count; ++j) out.push_back(current[j - 1] - origin);
  return out;
}

/// Sample points used for the curve positional encoding of a map element.
inline std::vector<Vec2> curve_pe_points(const MapElement& element,
                                         int samples_per_piece = kDefaultSamplesPerPiece) {
  return sample_element(element, samples_per_piece);
}

struct AnchorSet {
  std::vector<std::vector<Vec2>> anchors;   // K trajectories of L steps
  std::vector<std::size_t> assignment;      // cluster of each input trajectory
  std::vector<double> inertia_history;      // one entry per assignment pass
  int iterations = 0;

  double inertia() const { return inertia_history.empty() ? 0.0 : inertia_history.back(); }
};

inline constexpr int kDefaultAnchorCount = 6;

/// Lloyd's k-means over trajectories flattened to 2L-vectors with k-means++
/// seeding. Deterministic for a given seed. Throws std::invalid_argument for
/// fewer trajectories than k or ragged lengths.
AnchorSet cluster_anchors(std::span<const std::vector<Vec2>> trajectories,
                          std::size_t k = kDefaultAnchorCount, int max_iters = 100,
                          std::uint64_t seed = 0);

}  // namespace drivekit
