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

// Shared JSON helpers for the on-disk formats. Private to the library.

#include <cstdint>
#include <string>
#include <vector>

#include "drivekit/errors.hpp"
#include "drivekit/geometry.hpp"
#include "json.hpp"

namespace drivekit::json_util {

using Json = nlohmann::ordered_json;

inline const Json& require(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + key + ": missing field");
  return *it;
}

inline double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path + ": expected a number");
  return j.get<double>();
}

inline std::int64_t as_integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
  return j.get<std::int64_t>();
}

inline const std::string& as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected a string");
  return j.get_ref<const std::string&>();
}

inline const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  return j;
}

inline Vec2 as_point(const Json& j, const std::string& path) {
  as_array(j, path);
  if (j.size() != 2) throw ParseError(path + ": expected [x, y]");
  return {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]")};
}

inline Json point_json(Vec2 p) { return Json::array({p.x, p.y}); }

inline Json pose_json(const Pose2& p) { return Json::array({p.x, p.y, p.yaw}); }

inline Pose2 as_pose(const Json& j, const std::string& path) {
  as_array(j, path);
  if (j.size() != 3) throw ParseError(path + ": expected [x, y, yaw]");
  return make_pose(as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]"),
                   as_number(j[2], path + "[2]"));
}

inline Json parse(std::string_view bytes) {
  try {
    return Json::parse(bytes.begin(), bytes.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace drivekit::json_util
