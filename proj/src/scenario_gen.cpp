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

#include "drivekit/scenario_gen.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "drivekit/errors.hpp"

namespace drivekit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLaneWidth = 3.5;

// A path made of constant-curvature segments; the last one is unbounded.
struct Segment {
  double curvature;
  double length;
};

struct Path {
  Pose2 start;
  std::vector<Segment> segments;

  Pose2 at(double s) const {
    Pose2 p = start;
    for (std::size_t i = 0; i < segments.size(); ++i) {
      const bool last = i + 1 == segments.size();
      const double run = last ? s : std::min(s, segments[i].length);
      p = advance(p, segments[i].curvature, run);
      s -= run;
      if (s <= 0.0) break;
    }
    return p;
  }

  static Pose2 advance(const Pose2& p, double k, double s) {
    if (std::abs(k) < 1e-12) {
      return make_pose(p.x + s * std::cos(p.yaw), p.y + s * std::sin(p.yaw), p.yaw);
    }
    const double th = p.yaw + k * s;
    return make_pose(p.x + (std::sin(th) - std::sin(p.yaw)) / k,
                     p.y - (std::cos(th) - std::cos(p.yaw)) / k, th);
  }
};

Vec2 left_of(const Pose2& p, double offset) {
  return p.position() + offset * Vec2{-std::sin(p.yaw), std::cos(p.yaw)};
}

// Quadratic piece between two tangent-aligned points; the middle control point
// is the tangent intersection (exact for circular arcs), or the midpoint when
// the tangents are parallel.
BezierPiece tangent_piece(Vec2 a, double yaw_a, Vec2 b, double yaw_b) {
  const Vec2 ta{std::cos(yaw_a), std::sin(yaw_a)};
  const Vec2 tb{std::cos(yaw_b), std::sin(yaw_b)};
  const double denom = cross(ta, tb);
  if (std::abs(denom) < 1e-9) return {1, {a, b}};
  const double lambda = cross(b - a, tb) / denom;
  return {2, {a, a + lambda * ta, b}};
}

MapElement offset_element(const Path& path, const std::vector<double>& knots, double offset,
                          MapClass cls) {
  MapElement e;
  e.map_class = cls;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const Pose2 pa = path.at(knots[i]);
    const Pose2 pb = path.at(knots[i + 1]);
    BezierPiece piece = tangent_piece(left_of(pa, offset), pa.yaw, left_of(pb, offset), pb.yaw);
    if (i > 0) piece.control_points.front() = e.pieces.back().control_points.back();
    e.pieces.push_back(std::move(piece));
  }
  return e;
}

// Lane centreline plus both lane dividers along the ego path.
std::vector<MapElement> road_along(const Path& path, double length) {
  std::vector<double> knots{0.0};
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < path.segments.size(); ++i) {
    const auto& seg = path.segments[i];
    const double sweep = std::abs(seg.curvature * seg.length);
    if (sweep > 1e-9) {
      // Arc pieces spanning at most pi/4 each keep the quadratic close to the arc.
      const int n = std::max(1, static_cast<int>(std::ceil(sweep / (kPi / 4.0) - 1e-9)));
      for (int j = 1; j <= n; ++j) knots.push_back(acc + seg.length * j / n);
    } else {
      knots.push_back(acc + seg.length);
    }
    acc += seg.length;
  }
  if (length > acc) knots.push_back(length);
  const auto& last = path.segments.back();
  if (std::abs(last.curvature) > 1e-12 && path.segments.size() == 1) {
    // Single open-ended arc: split into at most 3 pieces (divider budget).
    knots = {0.0};
    const int n = std::min(3, std::max(1, static_cast<int>(std::ceil(
                                              std::abs(last.curvature) * length / (kPi / 4.0)))));
    for (int j = 1; j <= n; ++j) knots.push_back(length * j / n);
  }
  return {offset_element(path, knots, 0.0, MapClass::kLane),
          offset_element(path, knots, 0.5 * kLaneWidth, MapClass::kDivider),
          offset_element(path, knots, -0.5 * kLaneWidth, MapClass::kDivider)};
}

Trajectory sample_path(const Path& path, double speed, std::size_t poses, double dt) {
  Trajectory t;
  t.dt = dt;
  for (std::size_t k = 0; k < poses; ++k) t.poses.push_back(path.at(speed * dt * static_cast<double>(k)));
  return t;
}

Trajectory constant_velocity(const Pose2& start, double speed, std::size_t poses, double dt) {
  return sample_path(Path{start, {{0.0, 0.0}}}, speed, poses, dt);
}

Agent make_agent(std::int64_t id, AgentClass cls, double length, double width, Trajectory t) {
  Agent a;
  a.id = id;
  a.agent_class = cls;
  a.length = length;
  a.width = width;
  a.trajectory = std::move(t);
  return a;
}

void place(Scenario& s, const Pose2& frame) {
  auto move = [&](Trajectory& t) {
    for (auto& p : t.poses) p = transform_from_frame(p, frame);
  };
  move(s.ego.trajectory);
  for (auto& a : s.agents) move(a.trajectory);
  for (auto& e : s.map_elements) {
    for (auto& piece : e.pieces) {
      for (auto& c : piece.control_points) c = transform_from_frame({c.x, c.y, 0.0}, frame).position();
    }
  }
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double min_separation(const Trajectory& ego_plan, double ego_l, double ego_w, const Agent& agent,
                      std::size_t steps) {
  double best = std::numeric_limits<double>::infinity();
  double heading = ego_plan.poses[0].yaw;
  const HeadingPolicy policy{};
  for (std::size_t t = 1; t <= steps; ++t) {
    heading = heading_from_positions(ego_plan.poses[t - 1], ego_plan.poses[t], policy, heading);
    const OrientedBox ego{{ego_plan.poses[t].x, ego_plan.poses[t].y, heading}, ego_l, ego_w};
    best = std::min(best, obb_separation(ego, agent.box_at(t)));
  }
  return best;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kNearMiss: return "near_miss";
    case ScenarioKind::kTurn: return "turn";
    case ScenarioKind::kCrossing: return "crossing";
    case ScenarioKind::kStraight: return "straight";
    case ScenarioKind::kRandom: break;
  }
  return "random";
}

std::optional<ScenarioKind> scenario_kind_from_string(std::string_view s) {
  for (auto k : {ScenarioKind::kNearMiss, ScenarioKind::kTurn, ScenarioKind::kCrossing,
                 ScenarioKind::kStraight, ScenarioKind::kRandom}) {
    if (to_string(k) == s) return k;
  }
  if (s == "near-miss") return ScenarioKind::kNearMiss;
  return std::nullopt;
}

Scenario generate(const GenSpec& spec, const ScenarioConfig& config) {
  config.validate();
  std::mt19937_64 rng(spec.seed);
  const std::size_t n = static_cast<std::size_t>(config.predict_horizon) + 1;
  const double dt = config.dt;
  const double duration = dt * static_cast<double>(config.predict_horizon);
  const double ego_l = config.ego_length;
  const double ego_w = config.ego_width;
  if (spec.ego_speed < 0.0 || spec.agent_speed < 0.0) throw DomainError("speeds must be >= 0");

  Scenario s;
  s.dt = dt;
  s.horizon_steps = config.plan_horizon;
  s.ego.id = 0;
  s.ego.agent_class = AgentClass::kVehicle;
  s.ego.length = ego_l;
  s.ego.width = ego_w;

  Path ego_path{{0.0, 0.0, 0.0}, {{0.0, 0.0}}};
  double ego_speed = spec.ego_speed;

  switch (spec.kind) {
    case ScenarioKind::kNearMiss: {
      const double agent_l = uniform(rng, 3.8, 5.0);
      const double agent_w = uniform(rng, 1.7, 2.1);
      if (spec.gap <= -0.5 * (ego_w + agent_w)) throw DomainError("near_miss gap too negative");
      const double side = uniform(rng, 0.0, 1.0) < 0.5 ? 1.0 : -1.0;
      const double dx = uniform(rng, -1.0, 1.0);
      const double lateral = side * (0.5 * ego_w + spec.gap + 0.5 * agent_w);
      s.ego.trajectory = sample_path(ego_path, ego_speed, n, dt);
      s.agents.push_back(make_agent(1, AgentClass::kVehicle, agent_l, agent_w,
                                    constant_velocity({dx, lateral, 0.0}, ego_speed, n, dt)));
      break;
    }
    case ScenarioKind::kTurn: {
      if (!(spec.turn_radius > 0.5 * ego_w)) throw DomainError("turn radius too small");
      const double radius = spec.turn_radius;
      const double arc = 0.5 * kPi * radius;
      // The quarter turn completes exactly at the end of the plan horizon.
      ego_speed = arc / (dt * static_cast<double>(config.plan_horizon));
      ego_path.segments = {{1.0 / radius, arc}, {0.0, 0.0}};
      s.ego.trajectory = sample_path(ego_path, ego_speed, n, dt);
      // Stationary vehicle on the inner side of the corner, parallel to the exit
      // heading, pushed out until its closest approach equals the requested gap.
      const double agent_l = 4.5;
      const double agent_w = 1.9;
      const Pose2 exit = ego_path.at(arc);
      auto agent_at = [&](double offset) {
        const Vec2 c = left_of(exit, offset);
        return make_agent(1, AgentClass::kVehicle, agent_l, agent_w,
                          constant_velocity({c.x, c.y, exit.yaw}, 0.0, n, dt));
      };
      const auto steps = static_cast<std::size_t>(config.plan_horizon);
      double lo = 0.0;
      double hi = radius;
      if (min_separation(s.ego.trajectory, ego_l, ego_w, agent_at(hi), steps) < spec.gap) {
        throw DomainError("turn gap unreachable inside the corner");
      }
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (min_separation(s.ego.trajectory, ego_l, ego_w, agent_at(mid), steps) < spec.gap) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      s.agents.push_back(agent_at(hi));
      break;
    }
    case ScenarioKind::kCrossing: {
      if (spec.crossing_time < 0.0) throw DomainError("crossing_time must be >= 0");
      s.ego.trajectory = sample_path(ego_path, ego_speed, n, dt);
      const double cross_x = ego_speed * spec.crossing_time;
      const double arrive = spec.crossing_time + spec.crossing_offset;
      const Pose2 start{cross_x, -spec.agent_speed * arrive, 0.5 * kPi};
      s.agents.push_back(make_agent(1, AgentClass::kVehicle, 4.5, 1.9,
                                    constant_velocity(start, spec.agent_speed, n, dt)));
      break;
    }
    case ScenarioKind::kStraight: {
      if (spec.agent_count < 0) throw DomainError("agent_count must be >= 0");
      s.ego.trajectory = sample_path(ego_path, ego_speed, n, dt);
      for (int i = 0; i < spec.agent_count; ++i) {
        const int lane = static_cast<int>(std::uniform_int_distribution<int>(-1, 1)(rng));
        double x = uniform(rng, -30.0, 30.0);
        if (lane == 0 && std::abs(x) < 10.0) x = x < 0.0 ? x - 10.0 : x + 10.0;
        const double speed = std::max(0.0, spec.agent_speed + uniform(rng, -2.0, 2.0));
        s.agents.push_back(make_agent(i + 1, AgentClass::kVehicle, uniform(rng, 3.8, 5.0),
                                      uniform(rng, 1.7, 2.1),
                                      constant_velocity({x, lane * kLaneWidth, 0.0}, speed, n, dt)));
      }
      break;
    }
    case ScenarioKind::kRandom: {
      if (spec.agent_count < 0) throw DomainError("agent_count must be >= 0");
      ego_speed = uniform(rng, 2.0, 8.0);
      ego_path.segments = {{uniform(rng, -0.05, 0.05), 0.0}};
      s.ego.trajectory = sample_path(ego_path, ego_speed, n, dt);
      constexpr std::array<AgentClass, 4> kClasses = {AgentClass::kVehicle, AgentClass::kPedestrian,
                                                      AgentClass::kCyclist, AgentClass::kOther};
      for (int i = 0; i < spec.agent_count; ++i) {
        const auto cls = kClasses[std::uniform_int_distribution<std::size_t>(0, 3)(rng)];
        const double length = cls == AgentClass::kPedestrian ? uniform(rng, 0.4, 0.9)
                              : cls == AgentClass::kCyclist  ? uniform(rng, 1.5, 2.0)
                                                             : uniform(rng, 3.5, 5.5);
        const double width = cls == AgentClass::kPedestrian ? uniform(rng, 0.4, 0.9)
                             : cls == AgentClass::kCyclist  ? uniform(rng, 0.5, 0.9)
                                                            : uniform(rng, 1.6, 2.2);
        Pose2 start;
        if (i % 2 == 0) {
          // Near the ego path so that both outcomes occur.
          const auto k = std::uniform_int_distribution<int>(1, config.plan_horizon)(rng);
          const Pose2 on_path = s.ego.trajectory.poses[static_cast<std::size_t>(k)];
          start = make_pose(on_path.x + uniform(rng, -4.0, 4.0), on_path.y + uniform(rng, -4.0, 4.0),
                            uniform(rng, -kPi, kPi));
        } else {
          start = make_pose(uniform(rng, -40.0, 40.0), uniform(rng, -40.0, 40.0),
                            uniform(rng, -kPi, kPi));
        }
        const double speed = uniform(rng, 0.0, cls == AgentClass::kPedestrian ? 1.5 : 8.0);
        s.agents.push_back(make_agent(i + 1, cls, length, width,
                                      constant_velocity(start, speed, n, dt)));
      }
      break;
    }
  }

  const double reach = ego_speed * duration;
  if (reach > std::min(config.range_x, config.range_y)) {
    throw DomainError("ego leaves the evaluation range within the horizon");
  }
  s.map_elements = road_along(ego_path, std::max(reach, 1.0));

  if (spec.global_placement) {
    const Pose2 frame = make_pose(uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0),
                                  uniform(rng, -kPi, kPi));
    place(s, frame);
  }
  validate_scenario(s);
  return s;
}

std::vector<Scenario> near_miss_corpus(std::size_t count, double gap_min, double gap_max,
                                       std::uint64_t seed, const ScenarioConfig& config) {
  if (!(gap_min <= gap_max)) throw DomainError("gap_min must not exceed gap_max");
  std::mt19937_64 rng(seed);
  std::vector<Scenario> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    GenSpec spec;
    spec.kind = ScenarioKind::kNearMiss;
    spec.gap = gap_min == gap_max ? gap_min : uniform(rng, gap_min, gap_max);
    spec.seed = rng();
    out.push_back(generate(spec, config));
  }
  return out;
}

}  // namespace drivekit
