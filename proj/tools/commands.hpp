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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "drivekit/metrics.hpp"
#include "drivekit/scenario.hpp"

namespace drivekit::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;

/// Parses `argv` and runs the selected subcommand. `argv[0]` is the program
/// name. Output that the caller did not redirect to a file goes to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BenchRow {
  std::string method;  // "sparse" or "occupancy"
  double resolution = 0.0;
  std::size_t scenarios = 0;
  double wall_ms = 0.0;            // best of the repeats
  std::size_t grid_cells = 0;      // 0 for sparse
  std::uint64_t work_units = 0;    // pair tests or cells tested, per repeat
  std::size_t working_set_bytes = 0;
  std::size_t collisions = 0;      // scenarios flagged at the last horizon mark
};

struct BenchOptions {
  std::vector<double> resolutions = {0.5, 0.1, 0.02};
  int repeats = 3;
  CollisionConfig collision;
};

/// Seeded mixed corpus used when `bench` receives no input files.
std::vector<Scenario> bench_corpus(std::size_t count, std::uint64_t seed);

/// Times sparse and occupancy collision over `corpus` at every resolution.
std::vector<BenchRow> run_bench(std::span<const Scenario> corpus, const BenchOptions& options);

std::string bench_csv(std::span<const BenchRow> rows);

/// Returns an empty string when the scaling checks hold, else a description.
std::string check_bench_scaling(std::span<const BenchRow> rows);

/// Shortest round-trip decimal form of `v`.
std::string format_number(double v);

}  // namespace drivekit::cli
