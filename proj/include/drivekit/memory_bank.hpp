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
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "drivekit/bezier_map.hpp"
#include "drivekit/geometry.hpp"
#include "drivekit/scenario.hpp"

namespace drivekit {

struct MemoryConfig {
  int max_history = 5;          // M, frames kept at both memory levels
  int scene_topk = 256;         // K_d detection records per scene frame
  int detection_queries = 644;  // learnable detection queries per frame (informational)
  // Per map class (divider, cross, road segment, lane).
  std::array<int, kNumMapClasses> map_topk = {14, 12, 6, 10};
  std::array<int, kNumMapClasses> map_queries = {35, 30, 15, 25};
  double promote_threshold = 0.5;  // confidence needed for a fresh track id
  int expiry_misses = 8;           // 8 frames = 4 s at 2 Hz
  double drop_prob = 0.5;
  double fp_prob = 0.2;
  double fp_jitter_sigma = 0.5;  // metres, per axis
  double fp_jitter_max = 2.0;    // metres, radial truncation
  std::size_t feature_dim = 0;   // 0 accepts any feature length

  void validate() const;
  friend bool operator==(const MemoryConfig&, const MemoryConfig&) = default;
};

struct DetectionRecord {
  OrientedBox box;
  double confidence = 0.0;
  AgentClass agent_class = AgentClass::kVehicle;
  Vec2 velocity;
  std::vector<double> feature;

  friend bool operator==(const DetectionRecord&, const DetectionRecord&) = default;
};

/// A detection as handed over by the tracker. `matched_id` is the association
/// result; the bank only stores it.
struct Detection {
  DetectionRecord record;
  std::optional<std::int64_t> matched_id;
};

struct MapRecord {
  MapClass map_class = MapClass::kLane;
  double confidence = 0.0;
  std::vector<Vec2> control_points;

  friend bool operator==(const MapRecord&, const MapRecord&) = default;
};

struct SceneFrame {
  std::vector<DetectionRecord> detections;  // descending confidence
  std::vector<MapRecord> map_elements;      // grouped by class, descending confidence

  friend bool operator==(const SceneFrame&, const SceneFrame&) = default;
};

struct InstanceMemory {
  std::deque<DetectionRecord> history;  // oldest first, at most M records
  int miss_counter = 0;
  bool negative = false;  // approximate negative injected by augment_tracks

  friend bool operator==(const InstanceMemory&, const InstanceMemory&) = default;
};

/// Two-level memory: a FIFO of scene frames and per-id instance histories.
class MemoryBank {
 public:
  explicit MemoryBank(MemoryConfig config = {});

  const MemoryConfig& config() const { return config_; }
  const std::map<std::int64_t, InstanceMemory>& instances() const { return instances_; }
  std::size_t scene_size() const { return scene_.size(); }
  std::int64_t next_id() const { return next_id_; }

  /// Pushes one frame. Returns the ids assigned to newly promoted detections,
  /// in input order. Throws std::invalid_argument when a matched id is not live
  /// or appears twice.
  std::vector<std::int64_t> summarize_frame(std::span<const Detection> detections,
                                            std::span<const MapRecord> map_records = {});

  /// Re-expresses all stored positions in the new ego frame; `ego_motion` is
  /// the new ego pose given in the previous ego frame.
  void propagate(const Pose2& ego_motion);

  /// Drops instances whose miss counter reached expiry_misses.
  std::vector<std::int64_t> expire();

  /// Training-time track augmentation on a copy: each instance is dropped with
  /// drop_prob, then each survivor spawns a jittered negative with fp_prob.
  MemoryBank augment_tracks(std::uint64_t seed) const;

  /// Newest frame first.
  std::vector<SceneFrame> scene_window() const;

  friend bool operator==(const MemoryBank&, const MemoryBank&) = default;

 private:
  MemoryConfig config_;
  std::deque<SceneFrame> scene_;  // oldest first
  std::map<std::int64_t, InstanceMemory> instances_;
  std::int64_t next_id_ = 1;
};

/// Snapshot for debugging and the replay command.
std::string bank_to_json(const MemoryBank& bank);

/// One frame of a replay log.
struct LogFrame {
  Pose2 ego_motion;
  std::vector<Detection> detections;
  std::vector<MapRecord> map_records;
};

/// Parses `{"frames":[{"ego_motion":[dx,dy,dyaw],"detections":[...]}]}`.
std::vector<LogFrame> parse_detection_log(std::string_view bytes);

}  // namespace drivekit
