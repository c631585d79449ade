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

#include "drivekit/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

#include "drivekit/errors.hpp"
#include "json_util.hpp"

namespace drivekit {

namespace {

using json_util::Json;

constexpr std::array<std::string_view, 4> kAgentClassNames = {"vehicle", "pedestrian", "cyclist",
                                                              "other"};

std::string idx(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

Trajectory parse_trajectory(const Json& j, double dt, const std::string& path) {
  json_util::as_array(j, path);
  Trajectory traj;
  traj.dt = dt;
  std::vector<std::optional<double>> yaws;
  std::size_t with_z = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = idx(path, i);
    const Json& row = json_util::as_array(j[i], p);
    if (row.size() != 3 && row.size() != 4) throw ParseError(p + ": expected [x, y, yaw(, z)]");
    Pose2 pose{json_util::as_number(row[0], p + "[0]"), json_util::as_number(row[1], p + "[1]"),
               0.0};
    if (row[2].is_null()) {
      yaws.emplace_back(std::nullopt);
    } else {
      yaws.emplace_back(normalize_angle(json_util::as_number(row[2], p + "[2]")));
    }
    if (row.size() == 4) {
      traj.z.push_back(json_util::as_number(row[3], p + "[3]"));
      ++with_z;
    }
    traj.poses.push_back(pose);
  }
  if (with_z != 0 && with_z != traj.poses.size()) {
    throw ParseError(path + ": z must be given for every pose or for none");
  }
  // Null yaws are recovered from the position sequence.
  const HeadingPolicy policy{};
  for (std::size_t i = 0; i < traj.poses.size(); ++i) {
    if (yaws[i]) {
      traj.poses[i].yaw = *yaws[i];
    } else if (i == 0) {
      traj.poses[0].yaw = traj.poses.size() > 1
                              ? heading_from_positions(traj.poses[0], traj.poses[1], policy,
                                                       policy.initial_heading)
                              : policy.initial_heading;
    } else {
      traj.poses[i].yaw =
          heading_from_positions(traj.poses[i - 1], traj.poses[i], policy, traj.poses[i - 1].yaw);
    }
  }
  return traj;
}

Json trajectory_json(const Trajectory& traj) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < traj.poses.size(); ++i) {
    Json row = json_util::pose_json(traj.poses[i]);
    if (!traj.z.empty()) row.push_back(traj.z[i]);
    arr.push_back(std::move(row));
  }
  return arr;
}

Agent parse_agent(const Json& j, double dt, const std::string& path) {
  Agent a;
  a.id = json_util::as_integer(json_util::require(j, "id", path), path + ".id");
  const std::string& cls = json_util::as_string(json_util::require(j, "class", path), path + ".class");
  auto parsed = agent_class_from_string(cls);
  if (!parsed) throw ValidationError(path + ".class", "unknown agent class '" + cls + "'");
  a.agent_class = *parsed;
  a.length = json_util::as_number(json_util::require(j, "length", path), path + ".length");
  a.width = json_util::as_number(json_util::require(j, "width", path), path + ".width");
  double agent_dt = dt;
  if (auto it = j.find("dt"); it != j.end()) agent_dt = json_util::as_number(*it, path + ".dt");
  a.trajectory = parse_trajectory(json_util::require(j, "trajectory", path), agent_dt,
                                  path + ".trajectory");
  return a;
}

Json agent_json(const Agent& a) {
  Json j;
  j["id"] = a.id;
  j["class"] = std::string(to_string(a.agent_class));
  j["length"] = a.length;
  j["width"] = a.width;
  j["trajectory"] = trajectory_json(a.trajectory);
  return j;
}

MapElement parse_element(const Json& j, const std::string& path) {
  MapElement e;
  const std::string& cls = json_util::as_string(json_util::require(j, "class", path), path + ".class");
  auto parsed = map_class_from_string(cls);
  if (!parsed) throw ValidationError(path + ".class", "unknown map class '" + cls + "'");
  e.map_class = *parsed;
  const Json& pieces = json_util::as_array(json_util::require(j, "pieces", path), path + ".pieces");
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const std::string pp = idx(path + ".pieces", k);
    BezierPiece piece;
    piece.degree = static_cast<int>(
        json_util::as_integer(json_util::require(pieces[k], "degree", pp), pp + ".degree"));
    const Json& cps = json_util::as_array(json_util::require(pieces[k], "control_points", pp),
                                          pp + ".control_points");
    for (std::size_t c = 0; c < cps.size(); ++c) {
      piece.control_points.push_back(json_util::as_point(cps[c], idx(pp + ".control_points", c)));
    }
    e.pieces.push_back(std::move(piece));
  }
  return e;
}

Json element_json(const MapElement& e) {
  Json j;
  j["class"] = std::string(to_string(e.map_class));
  Json pieces = Json::array();
  for (const auto& piece : e.pieces) {
    Json pj;
    pj["degree"] = piece.degree;
    Json cps = Json::array();
    for (const auto& c : piece.control_points) cps.push_back(json_util::point_json(c));
    pj["control_points"] = std::move(cps);
    pieces.push_back(std::move(pj));
  }
  j["pieces"] = std::move(pieces);
  return j;
}

void validate_trajectory(const Trajectory& t, double dt, const std::string& path) {
  if (t.poses.empty()) throw ValidationError(path, "trajectory needs at least 1 pose");
  if (!(t.dt > 0.0)) throw ValidationError(path, "dt must be positive");
  if (t.dt != dt) throw ValidationError(path, "dt mismatch with scenario dt");
  if (!t.z.empty() && t.z.size() != t.poses.size()) {
    throw ValidationError(path, "z must be parallel to poses");
  }
  for (std::size_t i = 0; i < t.poses.size(); ++i) {
    const Pose2& p = t.poses[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.yaw)) {
      throw ValidationError(idx(path, i), "non-finite pose");
    }
  }
}

void validate_agent(const Agent& a, double dt, const std::string& path) {
  if (!(a.length > 0.0)) throw ValidationError(path + ".length", "length must be positive");
  if (!(a.width > 0.0)) throw ValidationError(path + ".width", "width must be positive");
  validate_trajectory(a.trajectory, dt, path + ".trajectory");
}

}  // namespace

std::string_view to_string(AgentClass c) { return kAgentClassNames[static_cast<std::size_t>(c)]; }

std::optional<AgentClass> agent_class_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kAgentClassNames.size(); ++i) {
    if (kAgentClassNames[i] == s) return static_cast<AgentClass>(i);
  }
  return std::nullopt;
}

Trajectory prefix(const Trajectory& t, std::size_t poses) {
  Trajectory out;
  out.dt = t.dt;
  const std::size_t n = std::min(poses, t.poses.size());
  out.poses.assign(t.poses.begin(), t.poses.begin() + static_cast<std::ptrdiff_t>(n));
  if (!t.z.empty()) out.z.assign(t.z.begin(), t.z.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

Trajectory evaluation_plan(const Scenario& scenario) {
  return prefix(scenario.plan_or_ego(), static_cast<std::size_t>(scenario.horizon_steps) + 1);
}

void ScenarioConfig::validate() const {
  if (!(range_x > 0.0 && range_y > 0.0)) throw ValidationError("range", "range must be positive");
  if (!(dt > 0.0)) throw ValidationError("dt", "dt must be positive");
  if (plan_horizon < 1) throw ValidationError("plan_horizon", "must be >= 1");
  if (plan_horizon > predict_horizon) {
    throw ValidationError("plan_horizon", "plan_horizon must not exceed predict_horizon");
  }
  if (!(ego_length > 0.0 && ego_width > 0.0)) {
    throw ValidationError("ego", "ego dimensions must be positive");
  }
}

void validate_scenario(const Scenario& s, const BezierClassConfig& bezier) {
  if (!(s.dt > 0.0)) throw ValidationError("dt", "dt must be positive");
  if (s.horizon_steps < 1) throw ValidationError("plan_horizon", "must be >= 1");
  validate_agent(s.ego, s.dt, "ego");
  if (s.ego.trajectory.size() < static_cast<std::size_t>(s.horizon_steps) + 1) {
    throw ValidationError("ego.trajectory", "ego trajectory shorter than plan_horizon + 1");
  }
  std::set<std::int64_t> ids{s.ego.id};
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    const std::string path = idx("agents", i);
    validate_agent(s.agents[i], s.dt, path);
    if (!ids.insert(s.agents[i].id).second) {
      throw ValidationError(path + ".id", "duplicate id " + std::to_string(s.agents[i].id));
    }
  }
  if (s.plan) {
    validate_trajectory(*s.plan, s.dt, "plan");
    if (s.plan->size() < static_cast<std::size_t>(s.horizon_steps) + 1) {
      throw ValidationError("plan", "plan shorter than plan_horizon + 1");
    }
  }
  for (std::size_t i = 0; i < s.map_elements.size(); ++i) {
    validate_element(s.map_elements[i], bezier, idx("map_elements", i));
  }
}

Scenario load_scenario(std::string_view bytes, const BezierClassConfig& bezier) {
  const Json root = json_util::parse(bytes);
  if (!root.is_object()) throw ParseError("scenario: expected a JSON object");
  Scenario s;
  try {
    s.dt = json_util::as_number(json_util::require(root, "dt", "scenario"), "dt");
    s.horizon_steps = static_cast<int>(
        json_util::as_integer(json_util::require(root, "plan_horizon", "scenario"), "plan_horizon"));
    s.ego = parse_agent(json_util::require(root, "ego", "scenario"), s.dt, "ego");
    if (auto it = root.find("agents"); it != root.end()) {
      json_util::as_array(*it, "agents");
      for (std::size_t i = 0; i < it->size(); ++i) {
        s.agents.push_back(parse_agent((*it)[i], s.dt, idx("agents", i)));
      }
    }
    if (auto it = root.find("map_elements"); it != root.end()) {
      json_util::as_array(*it, "map_elements");
      for (std::size_t i = 0; i < it->size(); ++i) {
        s.map_elements.push_back(parse_element((*it)[i], idx("map_elements", i)));
      }
    }
    if (auto it = root.find("plan"); it != root.end() && !it->is_null()) {
      s.plan = parse_trajectory(*it, s.dt, "plan");
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  validate_scenario(s, bezier);
  return s;
}

std::vector<MapElement> load_map_elements(std::string_view bytes, const BezierClassConfig& bezier) {
  const Json root = json_util::parse(bytes);
  std::vector<MapElement> out;
  try {
    const Json* list = &root;
    if (root.is_object() && root.contains("map_elements")) {
      list = &json_util::as_array(root["map_elements"], "map_elements");
    } else if (root.is_object()) {
      out.push_back(parse_element(root, "map_element"));
    }
    if (list->is_array()) {
      for (std::size_t i = 0; i < list->size(); ++i) {
        out.push_back(parse_element((*list)[i], idx("map_elements", i)));
      }
    } else if (!root.is_object()) {
      throw ParseError("map elements: expected an element, a list, or a scenario");
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("map elements: ") + e.what());
  }
  for (std::size_t i = 0; i < out.size(); ++i) validate_element(out[i], bezier, idx("map_elements", i));
  return out;
}

std::string save_scenario(const Scenario& s) {
  Json root;
  root["dt"] = s.dt;
  root["plan_horizon"] = s.horizon_steps;
  root["ego"] = agent_json(s.ego);
  Json agents = Json::array();
  for (const auto& a : s.agents) agents.push_back(agent_json(a));
  root["agents"] = std::move(agents);
  Json elements = Json::array();
  for (const auto& e : s.map_elements) elements.push_back(element_json(e));
  root["map_elements"] = std::move(elements);
  if (s.plan) root["plan"] = trajectory_json(*s.plan);
  return root.dump(1) + "\n";
}

namespace {

void reframe(Trajectory& t, const Pose2& ref) {
  for (auto& p : t.poses) p = transform_to_frame(p, ref);
}

}  // namespace

Scenario to_ego_frame(const Scenario& scenario, std::size_t step) {
  if (step >= scenario.ego.trajectory.size()) {
    throw std::out_of_range("to_ego_frame: step " + std::to_string(step) +
                            " outside ego trajectory");
  }
  const Pose2 ref = scenario.ego.trajectory.poses[step];
  Scenario out = scenario;
  reframe(out.ego.trajectory, ref);
  for (auto& a : out.agents) reframe(a.trajectory, ref);
  if (out.plan) reframe(*out.plan, ref);
  for (auto& e : out.map_elements) {
    for (auto& piece : e.pieces) {
      for (auto& c : piece.control_points) c = transform_to_frame({c.x, c.y, 0.0}, ref).position();
    }
  }
  return out;
}

}  // namespace drivekit
