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

#include "commands.hpp"

#include <glob.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "drivekit/errors.hpp"
#include "drivekit/memory_bank.hpp"
#include "drivekit/motion_geometry.hpp"
#include "drivekit/relationship.hpp"
#include "drivekit/scenario_gen.hpp"
#include "json.hpp"

namespace drivekit::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

/// Raised for bad command input; mapped to kExitInput.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError(path + ": cannot write");
  f << text;
}

std::vector<std::string> expand_globs(const std::vector<std::string>& patterns) {
  std::vector<std::string> files;
  for (const auto& pattern : patterns) {
    glob_t g{};
    if (glob(pattern.c_str(), 0, nullptr, &g) == 0) {
      for (std::size_t i = 0; i < g.gl_pathc; ++i) files.emplace_back(g.gl_pathv[i]);
    }
    globfree(&g);
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  return files;
}

Json parse_json(const std::string& bytes, const std::string& what) {
  try {
    return Json::parse(bytes);
  } catch (const Json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

std::vector<Vec2> parse_polyline(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected a list of [x, y] points");
  std::vector<Vec2> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() < 2 || !p[0].is_number() || !p[1].is_number()) {
      throw ParseError(path + ": expected [x, y] points");
    }
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

Json polyline_json(const std::vector<Vec2>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(Json::array({p.x, p.y}));
  return arr;
}

// ---------------------------------------------------------------------------
// Shared flag groups. Each mirrors one configuration struct field for field.

struct BezierFlags {
  std::vector<int> divider = {3, 2};
  std::vector<int> cross = {1, 1};
  std::vector<int> road_segment = {7, 3};
  std::vector<int> lane = {7, 3};

  void add(CLI::App* app) {
    app->add_option("--budget-divider", divider, "max pieces, max degree for dividers")->expected(2);
    app->add_option("--budget-cross", cross, "max pieces, max degree for crossings")->expected(2);
    app->add_option("--budget-road-segment", road_segment,
                    "max pieces, max degree for road segments")
        ->expected(2);
    app->add_option("--budget-lane", lane, "max pieces, max degree for lanes")->expected(2);
  }

  BezierClassConfig config() const {
    BezierClassConfig c;
    c.set(MapClass::kDivider, {divider[0], divider[1]});
    c.set(MapClass::kCross, {cross[0], cross[1]});
    c.set(MapClass::kRoadSegment, {road_segment[0], road_segment[1]});
    c.set(MapClass::kLane, {lane[0], lane[1]});
    return c;
  }
};

struct CollisionFlags {
  CollisionConfig config;
  std::string heading_mode = "derived";

  void add(CLI::App* app) {
    app->add_option("--ego-length", config.ego_length, "ego box length (m)");
    app->add_option("--ego-width", config.ego_width, "ego box width (m)");
    app->add_option("--grid-resolution", config.grid_resolution, "occupancy cell size (m)");
    app->add_option("--heading-mode", heading_mode, "ego heading for the sparse metric")
        ->check(CLI::IsMember({"derived", "frozen-straight"}));
    app->add_option("--horizon-marks", config.horizon_marks, "evaluation horizons (s)")
        ->delimiter(',');
    app->add_option("--range-x", config.range_x, "occupancy grid half-extent along x (m)");
    app->add_option("--range-y", config.range_y, "occupancy grid half-extent along y (m)");
    app->add_option("--dilation-cells", config.dilation_cells,
                    "Chebyshev dilation of the ego footprint (cells)");
    app->add_option("--min-displacement", config.heading_policy.min_displacement,
                    "shorter steps keep the previous heading (m)");
    app->add_option("--initial-heading", config.heading_policy.initial_heading,
                    "heading used before any motion (rad)");
  }

  CollisionConfig resolved() const {
    CollisionConfig c = config;
    c.heading_mode = *heading_mode_from_string(heading_mode);
    c.validate();
    return c;
  }
};

struct ScenarioFlags {
  ScenarioConfig config;

  void add(CLI::App* app) {
    app->add_option("--range-x", config.range_x, "evaluation half-extent along x (m)");
    app->add_option("--range-y", config.range_y, "evaluation half-extent along y (m)");
    app->add_option("--dt", config.dt, "seconds per step");
    app->add_option("--plan-horizon", config.plan_horizon, "planning horizon (steps)");
    app->add_option("--predict-horizon", config.predict_horizon, "prediction horizon (steps)");
    app->add_option("--ego-length", config.ego_length, "ego box length (m)");
    app->add_option("--ego-width", config.ego_width, "ego box width (m)");
  }
};

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::vector<std::string> inputs;
  std::string csv = "-";
  std::string summary;
  std::string predictions;
  double miss_threshold = kDefaultMissThreshold;
  CollisionFlags collision;
  BezierFlags bezier;
};

struct MotionSummary {
  double min_ade = 0.0;
  double min_fde = 0.0;
  double miss_rate = 0.0;
};

MotionSummary score_predictions(const Scenario& s, const std::string& file, double threshold) {
  const Json root = parse_json(read_input(file), file);
  if (!root.is_object() || !root.contains("agents") || !root["agents"].is_array()) {
    throw ParseError(file + ": expected {\"agents\": [...]}");
  }
  std::map<std::int64_t, const Agent*> by_id;
  for (const auto& a : s.agents) by_id[a.id] = &a;
  MotionSummary m;
  std::size_t n = 0;
  for (std::size_t i = 0; i < root["agents"].size(); ++i) {
    const Json& aj = root["agents"][i];
    const std::string path = file + ": agents[" + std::to_string(i) + "]";
    if (!aj.is_object() || !aj.contains("id") || !aj["id"].is_number_integer() ||
        !aj.contains("modes") || !aj["modes"].is_array()) {
      throw ParseError(path + ": expected {\"id\": int, \"modes\": [...]}");
    }
    const auto it = by_id.find(aj["id"].get<std::int64_t>());
    if (it == by_id.end()) throw ValidationError(path + ".id", "no agent with this id");
    std::vector<std::vector<Vec2>> modes;
    for (const auto& mj : aj["modes"]) modes.push_back(parse_polyline(mj, path + ".modes"));
    if (modes.empty()) throw ValidationError(path + ".modes", "need at least one mode");
    const std::size_t steps = modes.front().size();
    const auto& poses = it->second->trajectory.poses;
    if (steps == 0 || steps + 1 > poses.size()) {
      throw ValidationError(path + ".modes", "mode length must be within the agent future");
    }
    std::vector<Vec2> gt;
    for (std::size_t k = 1; k <= steps; ++k) gt.push_back(poses[k].position());
    MotionErrorReport r;
    try {
      r = motion_errors(modes, gt, threshold);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(path + ".modes", e.what());
    }
    m.min_ade += r.min_ade;
    m.min_fde += r.min_fde;
    m.miss_rate += r.miss ? 1.0 : 0.0;
    ++n;
  }
  if (n > 0) {
    m.min_ade /= static_cast<double>(n);
    m.min_fde /= static_cast<double>(n);
    m.miss_rate /= static_cast<double>(n);
  }
  return m;
}

int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  const CollisionConfig cfg = args.collision.resolved();
  const BezierClassConfig bezier = args.bezier.config();
  const auto files = expand_globs(args.inputs);
  if (files.empty()) {
    err << "error: no scenarios matched\n";
    return kExitInput;
  }
  struct Named {
    std::string name;
    std::string file;
  };
  std::vector<Named> named;
  for (const auto& f : files) named.push_back({fs::path(f).stem().string(), f});
  std::stable_sort(named.begin(), named.end(),
                   [](const Named& a, const Named& b) { return a.name < b.name; });

  OccupancyChecker occupancy(cfg);
  std::ostringstream csv;
  csv << "scenario,metric,horizon,value\n";
  const std::size_t marks = cfg.horizon_marks.size();
  std::vector<double> sparse_hits(marks, 0.0), occ_hits(marks, 0.0), l2_sum(marks, 0.0);
  double l2_avg_sum = 0.0;
  MotionSummary motion_sum;
  for (const auto& [name, file] : named) {
    Scenario s;
    Trajectory plan;
    CollisionReport sparse, occ;
    L2Report l2;
    try {
      s = load_scenario(read_input(file), bezier);
      plan = evaluation_plan(s);
      sparse = sparse_collision(plan, s.agents, cfg);
      occ = occupancy.evaluate(plan, s.agents);
      l2 = planning_l2(plan, prefix(s.ego.trajectory, plan.size()), cfg.horizon_marks);
    } catch (const ValidationError& e) {
      err << "error: " << file << ": " << e.what() << "\n";
      return kExitInput;
    } catch (const ParseError& e) {
      err << "error: " << file << ": " << e.what() << "\n";
      return kExitInput;
    } catch (const DomainError& e) {
      err << "error: " << file << ": " << e.what() << "\n";
      return kExitInput;
    }
    for (std::size_t m = 0; m < marks; ++m) {
      const std::string h = format_number(cfg.horizon_marks[m]);
      csv << name << ",sparse_collision," << h << "," << (sparse.horizon_flags[m] ? 1 : 0) << "\n";
      csv << name << ",occupancy_collision," << h << "," << (occ.horizon_flags[m] ? 1 : 0) << "\n";
      csv << name << ",l2," << h << "," << format_number(l2.values[m]) << "\n";
      sparse_hits[m] += sparse.horizon_flags[m] ? 1.0 : 0.0;
      occ_hits[m] += occ.horizon_flags[m] ? 1.0 : 0.0;
      l2_sum[m] += l2.values[m];
    }
    csv << name << ",l2,avg," << format_number(l2.average) << "\n";
    l2_avg_sum += l2.average;
    if (!args.predictions.empty()) {
      const std::string pfile = (fs::path(args.predictions) / (name + ".json")).string();
      MotionSummary m;
      try {
        m = score_predictions(s, pfile, args.miss_threshold);
      } catch (const std::exception& e) {
        err << "error: " << pfile << ": " << e.what() << "\n";
        return kExitInput;
      }
      csv << name << ",min_ade,-," << format_number(m.min_ade) << "\n";
      csv << name << ",min_fde,-," << format_number(m.min_fde) << "\n";
      csv << name << ",miss_rate,-," << format_number(m.miss_rate) << "\n";
      motion_sum.min_ade += m.min_ade;
      motion_sum.min_fde += m.min_fde;
      motion_sum.miss_rate += m.miss_rate;
    }
  }
  write_output(args.csv, csv.str(), out);

  const double n = static_cast<double>(named.size());
  Json summary;
  summary["scenarios"] = named.size();
  summary["heading_mode"] = std::string(to_string(cfg.heading_mode));
  summary["grid_resolution"] = cfg.grid_resolution;
  summary["horizon_marks"] = cfg.horizon_marks;
  Json sparse_rate = Json::array(), occ_rate = Json::array(), l2_mean = Json::array();
  for (std::size_t m = 0; m < marks; ++m) {
    sparse_rate.push_back(sparse_hits[m] / n);
    occ_rate.push_back(occ_hits[m] / n);
    l2_mean.push_back(l2_sum[m] / n);
  }
  summary["sparse_collision_rate"] = std::move(sparse_rate);
  summary["occupancy_collision_rate"] = std::move(occ_rate);
  summary["l2_mean"] = std::move(l2_mean);
  summary["l2_avg"] = l2_avg_sum / n;
  if (!args.predictions.empty()) {
    summary["min_ade"] = motion_sum.min_ade / n;
    summary["min_fde"] = motion_sum.min_fde / n;
    summary["miss_rate"] = motion_sum.miss_rate / n;
  }
  if (!args.summary.empty()) write_output(args.summary, summary.dump(1) + "\n", out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::vector<std::string> inputs;
  std::size_t count = 100;
  std::uint64_t seed = 0;
  std::string csv = "-";
  BenchOptions options;
  CollisionFlags collision;
};

int cmd_bench(BenchArgs args, std::ostream& out, std::ostream& err) {
  args.options.collision = args.collision.resolved();
  for (double r : args.options.resolutions) {
    if (!(r > 0.0)) throw InputError("resolutions must be positive");
  }
  if (args.options.repeats < 1) throw InputError("repeats must be >= 1");
  std::vector<Scenario> corpus;
  if (args.inputs.empty()) {
    corpus = bench_corpus(args.count, args.seed);
  } else {
    const auto files = expand_globs(args.inputs);
    if (files.empty()) {
      err << "error: no scenarios matched\n";
      return kExitInput;
    }
    for (const auto& f : files) {
      try {
        corpus.push_back(load_scenario(read_input(f)));
      } catch (const std::exception& e) {
        err << "error: " << f << ": " << e.what() << "\n";
        return kExitInput;
      }
    }
  }
  const auto rows = run_bench(corpus, args.options);
  write_output(args.csv, bench_csv(rows), out);
  const std::string problem = check_bench_scaling(rows);
  if (!problem.empty()) {
    err << "error: scaling check failed: " << problem << "\n";
    return kExitInternal;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].method != "occupancy") continue;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[j].method == "occupancy" && rows[j].resolution < rows[i].resolution) {
        err << "occupancy cells " << format_number(rows[i].resolution) << " m -> "
            << format_number(rows[j].resolution) << " m: x"
            << format_number(static_cast<double>(rows[j].grid_cells) /
                             static_cast<double>(rows[i].grid_cells))
            << "\n";
      }
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// label

struct LabelArgs {
  std::string input;
  std::string output = "-";
  RelationshipThresholds thresholds;
  BezierFlags bezier;
};

int cmd_label(const LabelArgs& args, std::ostream& out) {
  args.thresholds.validate();
  const Scenario s = load_scenario(read_input(args.input), args.bezier.config());
  const Trajectory& ego = s.ego.trajectory;
  std::vector<Trajectory> futures;
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    if (s.agents[i].trajectory.size() < ego.size()) {
      throw ValidationError("agents[" + std::to_string(i) + "].trajectory",
                            "shorter than the ego future");
    }
    futures.push_back(prefix(s.agents[i].trajectory, ego.size()));
  }
  const auto labels = label_relationships(futures, ego, args.thresholds);
  std::ostringstream text;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    Json j;
    j["id"] = s.agents[i].id;
    j["lateral"] = std::string(to_string(labels[i].lateral));
    j["longitudinal"] = std::string(to_string(labels[i].longitudinal));
    text << j.dump() << "\n";
  }
  write_output(args.output, text.str(), out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// anchors

struct AnchorArgs {
  std::string input;
  std::string output = "-";
  std::size_t k = kDefaultAnchorCount;
  int max_iters = 100;
  std::uint64_t seed = 0;
};

int cmd_anchors(const AnchorArgs& args, std::ostream& out) {
  const Json root = parse_json(read_input(args.input), args.input);
  if (!root.is_array()) throw ParseError(args.input + ": expected a list of trajectories");
  std::vector<std::vector<Vec2>> trajs;
  for (std::size_t i = 0; i < root.size(); ++i) {
    trajs.push_back(parse_polyline(root[i], "[" + std::to_string(i) + "]"));
  }
  if (args.max_iters < 0) throw InputError("max-iters must be >= 0");
  const AnchorSet set = cluster_anchors(trajs, args.k, args.max_iters, args.seed);
  Json j;
  j["k"] = args.k;
  Json anchors = Json::array();
  for (const auto& a : set.anchors) anchors.push_back(polyline_json(a));
  j["anchors"] = std::move(anchors);
  j["assignment"] = set.assignment;
  j["inertia"] = set.inertia();
  j["inertia_history"] = set.inertia_history;
  j["iterations"] = set.iterations;
  write_output(args.output, j.dump(1) + "\n", out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sample-map

struct SampleArgs {
  std::string input;
  std::string output = "-";
  int samples_per_piece = kDefaultSamplesPerPiece;
  BezierFlags bezier;
};

int cmd_sample_map(const SampleArgs& args, std::ostream& out) {
  const std::string bytes = read_input(args.input);
  const Json root = parse_json(bytes, args.input);
  const auto elements = load_map_elements(bytes, args.bezier.config());
  if (args.samples_per_piece < 2) throw InputError("samples-per-piece must be >= 2");
  Json j;
  // A single element document yields one polyline; anything else a list.
  const bool single = root.is_object() && !root.contains("map_elements");
  if (single) {
    j = polyline_json(sample_element(elements.front(), args.samples_per_piece));
  } else {
    j = Json::array();
    for (const auto& e : elements) j.push_back(polyline_json(sample_element(e, args.samples_per_piece)));
  }
  write_output(args.output, j.dump() + "\n", out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string kind = "near_miss";
  GenSpec spec;
  bool no_global_placement = false;
  std::string corpus;
  std::size_t count = 200;
  double gap_min = 0.05;
  double gap_max = 0.45;
  std::string output = "-";
  std::string out_dir = ".";
  ScenarioFlags scenario;
};

int cmd_gen(GenArgs args, std::ostream& out) {
  args.scenario.config.validate();
  if (!args.corpus.empty()) {
    if (args.corpus != "near-miss" && args.corpus != "near_miss") {
      throw InputError("unknown corpus '" + args.corpus + "' (supported: near-miss)");
    }
    const auto corpus =
        near_miss_corpus(args.count, args.gap_min, args.gap_max, args.spec.seed, args.scenario.config);
    fs::create_directories(args.out_dir);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "near_miss_%04zu.json", i);
      write_output((fs::path(args.out_dir) / name).string(), save_scenario(corpus[i]), out);
    }
    return kExitOk;
  }
  const auto kind = scenario_kind_from_string(args.kind);
  if (!kind) throw InputError("unknown kind '" + args.kind + "'");
  args.spec.kind = *kind;
  args.spec.global_placement = !args.no_global_placement;
  write_output(args.output, save_scenario(generate(args.spec, args.scenario.config)), out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// replay

struct ReplayArgs {
  std::string input;
  std::string output = "-";
  MemoryConfig config;
  std::vector<int> map_topk = {14, 12, 6, 10};
  std::vector<int> map_queries = {35, 30, 15, 25};
  std::optional<std::uint64_t> augment_seed;
};

int cmd_replay(ReplayArgs args, std::ostream& out) {
  std::copy(args.map_topk.begin(), args.map_topk.end(), args.config.map_topk.begin());
  std::copy(args.map_queries.begin(), args.map_queries.end(), args.config.map_queries.begin());
  const auto frames = parse_detection_log(read_input(args.input));
  MemoryBank bank(args.config);
  for (std::size_t f = 0; f < frames.size(); ++f) {
    bank.propagate(frames[f].ego_motion);
    try {
      bank.summarize_frame(frames[f].detections, frames[f].map_records);
    } catch (const std::invalid_argument& e) {
      throw ValidationError("frames[" + std::to_string(f) + "]", e.what());
    }
    bank.expire();
  }
  if (args.augment_seed) bank = bank.augment_tracks(*args.augment_seed);
  write_output(args.output, bank_to_json(bank), out);
  return kExitOk;
}

}  // namespace

// ---------------------------------------------------------------------------
// bench library surface

std::vector<Scenario> bench_corpus(std::size_t count, std::uint64_t seed) {
  std::vector<Scenario> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    GenSpec spec;
    spec.seed = seed + i;
    switch (i % 4) {
      case 0: spec.kind = ScenarioKind::kRandom; break;
      case 1: spec.kind = ScenarioKind::kNearMiss; break;
      case 2: spec.kind = ScenarioKind::kStraight; break;
      default: spec.kind = ScenarioKind::kCrossing; break;
    }
    out.push_back(generate(spec));
  }
  return out;
}

std::vector<BenchRow> run_bench(std::span<const Scenario> corpus, const BenchOptions& options) {
  using Clock = std::chrono::steady_clock;
  options.collision.validate();
  std::vector<Trajectory> plans;
  std::size_t max_agents = 0;
  for (const auto& s : corpus) {
    plans.push_back(evaluation_plan(s));
    max_agents = std::max(max_agents, s.agents.size());
  }
  auto ms_since = [](Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  };
  std::vector<BenchRow> rows;
  for (double res : options.resolutions) {
    CollisionConfig cfg = options.collision;
    cfg.grid_resolution = res;

    BenchRow sparse{"sparse", res, corpus.size()};
    sparse.wall_ms = std::numeric_limits<double>::infinity();
    sparse.working_set_bytes = (max_agents + 1) * sizeof(OrientedBox);
    for (int rep = 0; rep < options.repeats; ++rep) {
      std::uint64_t work = 0;
      std::size_t hits = 0;
      const auto t0 = Clock::now();
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto r = sparse_collision(plans[i], corpus[i].agents, cfg);
        work += r.work_units;
        hits += r.horizon_flags.empty() ? 0 : r.horizon_flags.back();
      }
      sparse.wall_ms = std::min(sparse.wall_ms, ms_since(t0));
      sparse.work_units = work;
      sparse.collisions = hits;
    }
    rows.push_back(sparse);

    BenchRow occ{"occupancy", res, corpus.size()};
    occ.wall_ms = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < options.repeats; ++rep) {
      std::uint64_t work = 0;
      std::size_t hits = 0;
      const auto t0 = Clock::now();
      OccupancyChecker checker(cfg);
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto r = checker.evaluate(plans[i], corpus[i].agents);
        work += r.work_units;
        hits += r.horizon_flags.empty() ? 0 : r.horizon_flags.back();
      }
      occ.wall_ms = std::min(occ.wall_ms, ms_since(t0));
      occ.work_units = work;
      occ.collisions = hits;
      occ.grid_cells = checker.stats().grid_cells;
      occ.working_set_bytes = checker.stats().grid_bytes;
    }
    rows.push_back(occ);
  }
  return rows;
}

std::string bench_csv(std::span<const BenchRow> rows) {
  std::ostringstream csv;
  csv << "method,resolution,scenarios,wall_ms,grid_cells,work_units,working_set_bytes,collisions\n";
  for (const auto& r : rows) {
    csv << r.method << "," << format_number(r.resolution) << "," << r.scenarios << ","
        << format_number(std::round(r.wall_ms * 1000.0) / 1000.0) << "," << r.grid_cells << ","
        << r.work_units << "," << r.working_set_bytes << "," << r.collisions << "\n";
  }
  return csv.str();
}

std::string check_bench_scaling(std::span<const BenchRow> rows) {
  std::optional<std::uint64_t> sparse_work;
  for (const auto& r : rows) {
    if (r.method != "sparse") continue;
    if (sparse_work && *sparse_work != r.work_units) {
      return "sparse work differs across resolutions";
    }
    sparse_work = r.work_units;
  }
  for (const auto& a : rows) {
    for (const auto& b : rows) {
      if (a.method != "occupancy" || b.method != "occupancy" || !(b.resolution < a.resolution)) continue;
      const double ratio = static_cast<double>(b.grid_cells) / static_cast<double>(a.grid_cells);
      const double expected = (a.resolution / b.resolution) * (a.resolution / b.resolution);
      if (std::abs(ratio - expected) > 0.01 * expected) {
        return "occupancy cells " + format_number(a.resolution) + " -> " +
               format_number(b.resolution) + " grew x" + format_number(ratio) + ", expected x" +
               format_number(expected);
      }
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"drivekit: sparse driving-scenario geometry, memory and metrics toolkit", "drivekit"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Collision and L2 metrics over scenario files");
  eval_cmd->add_option("inputs", eval.inputs, "scenario files or glob patterns")->required();
  eval_cmd->add_option("--csv", eval.csv, "per-scenario CSV output ('-' for stdout)");
  eval_cmd->add_option("--summary", eval.summary, "aggregate JSON output ('-' for stdout)");
  eval_cmd->add_option("--predictions", eval.predictions,
                       "directory of <scenario>.json motion predictions");
  eval_cmd->add_option("--miss-threshold", eval.miss_threshold, "final-step miss distance (m)");
  eval.collision.add(eval_cmd);
  eval.bezier.add(eval_cmd);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time sparse against occupancy collision checking");
  bench_cmd->add_option("inputs", bench.inputs, "scenario files or globs (default: generated corpus)");
  bench_cmd->add_option("--count", bench.count, "generated corpus size");
  bench_cmd->add_option("--seed", bench.seed, "generated corpus seed");
  bench_cmd->add_option("--resolutions", bench.options.resolutions, "occupancy cell sizes (m)")
      ->delimiter(',');
  bench_cmd->add_option("--repeats", bench.options.repeats, "timing repeats (best is kept)");
  bench_cmd->add_option("--csv", bench.csv, "table output ('-' for stdout)");
  bench.collision.add(bench_cmd);

  LabelArgs label;
  auto* label_cmd = app.add_subcommand("label", "Ego-agent relationship labels for a scenario");
  label_cmd->add_option("input", label.input, "scenario file ('-' for stdin)")->required();
  label_cmd->add_option("-o,--output", label.output, "JSON lines output");
  label_cmd->add_option("--lateral-thresh", label.thresholds.lateral_thresh, "lateral threshold (m)");
  label_cmd->add_option("--longitudinal-thresh", label.thresholds.longitudinal_thresh,
                        "longitudinal threshold (m)");
  label_cmd->add_option("--probe-accel", label.thresholds.probe_accel,
                        "speed-up / speed-down probe acceleration (m/s^2)");
  label.bezier.add(label_cmd);

  AnchorArgs anchors;
  auto* anchors_cmd = app.add_subcommand("anchors", "K-Means trajectory anchors");
  anchors_cmd->add_option("input", anchors.input, "JSON list of trajectories")->required();
  anchors_cmd->add_option("-o,--output", anchors.output, "JSON output");
  anchors_cmd->add_option("-k,--k", anchors.k, "anchor count");
  anchors_cmd->add_option("--max-iters", anchors.max_iters, "Lloyd iteration cap");
  anchors_cmd->add_option("--seed", anchors.seed, "k-means++ seed");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample-map", "Sample Bezier map elements into polylines");
  sample_cmd->add_option("input", sample.input, "element, element list, or scenario")->required();
  sample_cmd->add_option("-o,--output", sample.output, "JSON output");
  sample_cmd->add_option("-S,--samples-per-piece", sample.samples_per_piece, "points per piece");
  sample.bezier.add(sample_cmd);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate synthetic scenarios");
  gen_cmd->add_option("--kind", gen.kind, "near_miss, turn, crossing, straight or random")
      ->check(CLI::IsMember({"near_miss", "near-miss", "turn", "crossing", "straight", "random"}));
  gen_cmd->add_option("--seed", gen.spec.seed, "generator seed");
  gen_cmd->add_option("--gap", gen.spec.gap, "near_miss lateral gap / turn corner gap (m)");
  gen_cmd->add_option("--turn-radius", gen.spec.turn_radius, "turn radius (m)");
  gen_cmd->add_option("--ego-speed", gen.spec.ego_speed, "ego speed (m/s)");
  gen_cmd->add_option("--agent-speed", gen.spec.agent_speed, "agent speed (m/s)");
  gen_cmd->add_option("--agent-count", gen.spec.agent_count, "agents for straight and random");
  gen_cmd->add_option("--crossing-time", gen.spec.crossing_time, "ego arrival at the crossing (s)");
  gen_cmd->add_option("--crossing-offset", gen.spec.crossing_offset, "agent arrival delay (s)");
  gen_cmd->add_flag("--no-global-placement", gen.no_global_placement,
                    "keep the ego at the origin instead of a seeded world pose");
  gen_cmd->add_option("--corpus", gen.corpus, "generate a corpus instead (near-miss)");
  gen_cmd->add_option("--count", gen.count, "corpus size");
  gen_cmd->add_option("--gap-min", gen.gap_min, "corpus minimum gap (m)");
  gen_cmd->add_option("--gap-max", gen.gap_max, "corpus maximum gap (m)");
  gen_cmd->add_option("-o,--output", gen.output, "scenario output ('-' for stdout)");
  gen_cmd->add_option("--out-dir", gen.out_dir, "corpus output directory");
  gen.scenario.add(gen_cmd);

  ReplayArgs replay;
  auto* replay_cmd = app.add_subcommand("replay", "Replay a detection log through the memory bank");
  replay_cmd->add_option("input", replay.input, "detection log JSON")->required();
  replay_cmd->add_option("-o,--output", replay.output, "bank snapshot output");
  replay_cmd->add_option("--max-history", replay.config.max_history, "frames kept per memory level");
  replay_cmd->add_option("--scene-topk", replay.config.scene_topk, "records kept per scene frame");
  replay_cmd->add_option("--detection-queries", replay.config.detection_queries,
                         "detection queries per frame (informational)");
  replay_cmd->add_option("--map-topk", replay.map_topk,
                         "map records kept per class (divider, cross, road_segment, lane)")
      ->expected(4)
      ->delimiter(',');
  replay_cmd->add_option("--map-queries", replay.map_queries,
                         "map queries per class (informational)")
      ->expected(4)
      ->delimiter(',');
  replay_cmd->add_option("--promote-threshold", replay.config.promote_threshold,
                         "confidence needed for a new track id");
  replay_cmd->add_option("--expiry-misses", replay.config.expiry_misses,
                         "consecutive misses before removal");
  replay_cmd->add_option("--drop-prob", replay.config.drop_prob, "augmentation drop probability");
  replay_cmd->add_option("--fp-prob", replay.config.fp_prob,
                         "augmentation approximate-negative probability");
  replay_cmd->add_option("--fp-jitter-sigma", replay.config.fp_jitter_sigma,
                         "negative centre jitter sigma (m)");
  replay_cmd->add_option("--fp-jitter-max", replay.config.fp_jitter_max,
                         "negative centre jitter cap (m)");
  replay_cmd->add_option("--feature-dim", replay.config.feature_dim,
                         "required feature length (0 accepts any)");
  replay_cmd->add_option("--augment-seed", replay.augment_seed,
                         "apply track augmentation to the final bank with this seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(eval, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
    if (label_cmd->parsed()) return cmd_label(label, out);
    if (anchors_cmd->parsed()) return cmd_anchors(anchors, out);
    if (sample_cmd->parsed()) return cmd_sample_map(sample, out);
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (replay_cmd->parsed()) return cmd_replay(replay, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv = {"drivekit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace drivekit::cli
