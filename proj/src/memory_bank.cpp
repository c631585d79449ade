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

#include "drivekit/memory_bank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "drivekit/errors.hpp"
#include "json_util.hpp"

namespace drivekit {

void MemoryConfig::validate() const {
  if (max_history < 1) throw std::invalid_argument("max_history must be positive");
  if (scene_topk < 1) throw std::invalid_argument("scene_topk must be positive");
  if (expiry_misses < 1) throw std::invalid_argument("expiry_misses must be positive");
  for (int k : map_topk) {
    if (k < 1) throw std::invalid_argument("map_topk entries must be positive");
  }
  auto unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!unit(promote_threshold)) throw std::invalid_argument("promote_threshold outside [0,1]");
  if (!unit(drop_prob)) throw std::invalid_argument("drop_prob outside [0,1]");
  if (!unit(fp_prob)) throw std::invalid_argument("fp_prob outside [0,1]");
  if (!(fp_jitter_sigma >= 0.0 && fp_jitter_max > 0.0)) {
    throw std::invalid_argument("jitter parameters must be non-negative");
  }
}

MemoryBank::MemoryBank(MemoryConfig config) : config_(std::move(config)) { config_.validate(); }

namespace {

template <typename T, typename Conf>
std::vector<std::size_t> topk_indices(std::span<const T> items, std::size_t k, Conf conf) {
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return conf(items[a]) > conf(items[b]);
  });
  if (order.size() > k) order.resize(k);
  return order;
}

void push_bounded(std::deque<DetectionRecord>& history, DetectionRecord record, std::size_t cap) {
  history.push_back(std::move(record));
  while (history.size() > cap) history.pop_front();
}

void reframe(DetectionRecord& r, const Pose2& ego_motion) {
  r.box.center = transform_to_frame(r.box.center, ego_motion);
  r.velocity = rotate(r.velocity, -ego_motion.yaw);
}

}  // namespace

std::vector<std::int64_t> MemoryBank::summarize_frame(std::span<const Detection> detections,
                                                      std::span<const MapRecord> map_records) {
  for (const auto& d : detections) {
    if (!(d.record.confidence >= 0.0 && d.record.confidence <= 1.0)) {
      throw std::invalid_argument("detection confidence outside [0,1]");
    }
    if (config_.feature_dim != 0 && d.record.feature.size() != config_.feature_dim) {
      throw std::invalid_argument("detection feature has wrong dimension");
    }
  }
  std::set<std::int64_t> matched;
  for (const auto& d : detections) {
    if (!d.matched_id) continue;
    if (!instances_.contains(*d.matched_id)) {
      throw std::invalid_argument("matched id " + std::to_string(*d.matched_id) + " is not live");
    }
    if (!matched.insert(*d.matched_id).second) {
      throw std::invalid_argument("matched id " + std::to_string(*d.matched_id) +
                                  " used twice in one frame");
    }
  }

  SceneFrame frame;
  for (std::size_t i : topk_indices(detections, static_cast<std::size_t>(config_.scene_topk),
                                    [](const Detection& d) { return d.record.confidence; })) {
    frame.detections.push_back(detections[i].record);
  }
  for (std::size_t c = 0; c < kNumMapClasses; ++c) {
    std::vector<MapRecord> of_class;
    for (const auto& m : map_records) {
      if (static_cast<std::size_t>(m.map_class) == c) of_class.push_back(m);
    }
    for (std::size_t i : topk_indices(std::span<const MapRecord>(of_class),
                                      static_cast<std::size_t>(config_.map_topk[c]),
                                      [](const MapRecord& m) { return m.confidence; })) {
      frame.map_elements.push_back(of_class[i]);
    }
  }
  scene_.push_back(std::move(frame));
  while (scene_.size() > static_cast<std::size_t>(config_.max_history)) scene_.pop_front();

  const auto cap = static_cast<std::size_t>(config_.max_history);
  for (auto& [id, inst] : instances_) {
    if (!matched.contains(id)) ++inst.miss_counter;
  }
  std::vector<std::int64_t> fresh;
  for (const auto& d : detections) {
    if (d.matched_id) {
      auto& inst = instances_.at(*d.matched_id);
      push_bounded(inst.history, d.record, cap);
      inst.miss_counter = 0;
    } else if (d.record.confidence >= config_.promote_threshold) {
      const std::int64_t id = next_id_++;
      InstanceMemory inst;
      inst.history.push_back(d.record);
      instances_.emplace(id, std::move(inst));
      fresh.push_back(id);
    }
  }
  return fresh;
}

void MemoryBank::propagate(const Pose2& ego_motion) {
  for (auto& frame : scene_) {
    for (auto& r : frame.detections) reframe(r, ego_motion);
    for (auto& m : frame.map_elements) {
      for (auto& c : m.control_points) {
        c = transform_to_frame({c.x, c.y, 0.0}, ego_motion).position();
      }
    }
  }
  for (auto& [id, inst] : instances_) {
    for (auto& r : inst.history) reframe(r, ego_motion);
  }
}

std::vector<std::int64_t> MemoryBank::expire() {
  std::vector<std::int64_t> removed;
  for (auto it = instances_.begin(); it != instances_.end();) {
    if (it->second.miss_counter >= config_.expiry_misses) {
      removed.push_back(it->first);
      it = instances_.erase(it);
    } else {
      ++it;
    }
  }
  return removed;
}

MemoryBank MemoryBank::augment_tracks(std::uint64_t seed) const {
  MemoryBank out = *this;
  out.instances_.clear();
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution drop(config_.drop_prob);
  std::bernoulli_distribution inject(config_.fp_prob);
  std::normal_distribution<double> jitter(0.0, config_.fp_jitter_sigma);

  // Provisional ids for negatives are negative so they never collide with
  // real track ids.
  std::int64_t provisional = -1;
  for (const auto& [id, inst] : instances_) {
    if (drop(rng)) continue;
    out.instances_.emplace(id, inst);
    if (!inject(rng)) continue;
    Vec2 offset;
    do {
      offset = {jitter(rng), jitter(rng)};
    } while (norm(offset) > config_.fp_jitter_max);
    InstanceMemory negative = inst;
    negative.negative = true;
    for (auto& r : negative.history) {
      r.box.center.x += offset.x;
      r.box.center.y += offset.y;
    }
    out.instances_.emplace(provisional--, std::move(negative));
  }
  return out;
}

std::vector<SceneFrame> MemoryBank::scene_window() const {
  return {scene_.rbegin(), scene_.rend()};
}

namespace {

using json_util::Json;

Json record_json(const DetectionRecord& r) {
  Json j;
  j["box"] = Json::array({r.box.center.x, r.box.center.y, r.box.center.yaw, r.box.length,
                          r.box.width});
  j["confidence"] = r.confidence;
  j["class"] = std::string(to_string(r.agent_class));
  j["velocity"] = json_util::point_json(r.velocity);
  j["feature"] = r.feature;
  return j;
}

Json map_record_json(const MapRecord& m) {
  Json j;
  j["class"] = std::string(to_string(m.map_class));
  j["confidence"] = m.confidence;
  Json cps = Json::array();
  for (const auto& c : m.control_points) cps.push_back(json_util::point_json(c));
  j["control_points"] = std::move(cps);
  return j;
}

DetectionRecord parse_record(const Json& j, const std::string& path) {
  DetectionRecord r;
  const Json& box = json_util::as_array(json_util::require(j, "box", path), path + ".box");
  if (box.size() != 5) throw ParseError(path + ".box: expected [x, y, yaw, length, width]");
  r.box.center = make_pose(json_util::as_number(box[0], path + ".box[0]"),
                           json_util::as_number(box[1], path + ".box[1]"),
                           json_util::as_number(box[2], path + ".box[2]"));
  r.box.length = json_util::as_number(box[3], path + ".box[3]");
  r.box.width = json_util::as_number(box[4], path + ".box[4]");
  if (!r.box.valid()) throw ValidationError(path + ".box", "box dimensions must be positive");
  r.confidence = json_util::as_number(json_util::require(j, "confidence", path), path + ".confidence");
  if (!(r.confidence >= 0.0 && r.confidence <= 1.0)) {
    throw ValidationError(path + ".confidence", "confidence outside [0,1]");
  }
  if (auto it = j.find("class"); it != j.end()) {
    auto cls = agent_class_from_string(json_util::as_string(*it, path + ".class"));
    if (!cls) throw ValidationError(path + ".class", "unknown agent class");
    r.agent_class = *cls;
  }
  if (auto it = j.find("velocity"); it != j.end()) {
    r.velocity = json_util::as_point(*it, path + ".velocity");
  }
  if (auto it = j.find("feature"); it != j.end()) {
    const Json& f = json_util::as_array(*it, path + ".feature");
    for (std::size_t i = 0; i < f.size(); ++i) {
      r.feature.push_back(json_util::as_number(f[i], path + ".feature"));
    }
  }
  return r;
}

}  // namespace

std::string bank_to_json(const MemoryBank& bank) {
  Json root;
  root["max_history"] = bank.config().max_history;
  root["next_id"] = bank.next_id();
  Json frames = Json::array();
  for (const auto& frame : bank.scene_window()) {
    Json fj;
    Json dets = Json::array();
    for (const auto& r : frame.detections) dets.push_back(record_json(r));
    fj["detections"] = std::move(dets);
    Json maps = Json::array();
    for (const auto& m : frame.map_elements) maps.push_back(map_record_json(m));
    fj["map_elements"] = std::move(maps);
    frames.push_back(std::move(fj));
  }
  root["scene_frames"] = std::move(frames);
  Json instances = Json::array();
  for (const auto& [id, inst] : bank.instances()) {
    Json ij;
    ij["id"] = id;
    ij["miss_counter"] = inst.miss_counter;
    ij["negative"] = inst.negative;
    Json hist = Json::array();
    for (const auto& r : inst.history) hist.push_back(record_json(r));
    ij["history"] = std::move(hist);
    instances.push_back(std::move(ij));
  }
  root["instances"] = std::move(instances);
  return root.dump(1) + "\n";
}

std::vector<LogFrame> parse_detection_log(std::string_view bytes) {
  const Json root = json_util::parse(bytes);
  std::vector<LogFrame> out;
  try {
    const Json& frames = json_util::as_array(json_util::require(root, "frames", "log"), "frames");
    for (std::size_t f = 0; f < frames.size(); ++f) {
      const std::string path = "frames[" + std::to_string(f) + "]";
      LogFrame frame;
      if (auto it = frames[f].find("ego_motion"); it != frames[f].end()) {
        frame.ego_motion = json_util::as_pose(*it, path + ".ego_motion");
      }
      if (auto it = frames[f].find("detections"); it != frames[f].end()) {
        json_util::as_array(*it, path + ".detections");
        for (std::size_t i = 0; i < it->size(); ++i) {
          const std::string dp = path + ".detections[" + std::to_string(i) + "]";
          Detection d;
          d.record = parse_record((*it)[i], dp);
          if (auto m = (*it)[i].find("matched_id"); m != (*it)[i].end() && !m->is_null()) {
            d.matched_id = json_util::as_integer(*m, dp + ".matched_id");
          }
          frame.detections.push_back(std::move(d));
        }
      }
      if (auto it = frames[f].find("map_elements"); it != frames[f].end()) {
        json_util::as_array(*it, path + ".map_elements");
        for (std::size_t i = 0; i < it->size(); ++i) {
          const std::string mp = path + ".map_elements[" + std::to_string(i) + "]";
          const Json& mj = (*it)[i];
          MapRecord m;
          auto cls = map_class_from_string(
              json_util::as_string(json_util::require(mj, "class", mp), mp + ".class"));
          if (!cls) throw ValidationError(mp + ".class", "unknown map class");
          m.map_class = *cls;
          m.confidence = json_util::as_number(json_util::require(mj, "confidence", mp),
                                              mp + ".confidence");
          const Json& cps = json_util::as_array(json_util::require(mj, "control_points", mp),
                                                mp + ".control_points");
          for (const auto& c : cps) m.control_points.push_back(json_util::as_point(c, mp));
          frame.map_records.push_back(std::move(m));
        }
      }
      out.push_back(std::move(frame));
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("detection log: ") + e.what());
  }
  return out;
}

}  // namespace drivekit
