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

// Inner loops of the occupancy-grid baseline. Each kernel has a portable
// scalar reference and, on x86-64, an AVX2 variant picked at runtime. The two
// must agree bit for bit; see tests/test_raster_kernels.cpp.

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "drivekit/geometry.hpp"

namespace drivekit::simd {

/// Precomputed closed-set test "does the cell square of half-size h around c
/// touch the box". A cell is hit iff all four separating-axis checks pass.
struct BoxCellTest {
  double cx = 0.0, cy = 0.0;  // box centre
  double ux = 1.0, uy = 0.0;  // heading axis
  double vx = 0.0, vy = 1.0;  // lateral axis
  double reach_x = 0.0;       // box x half-extent + h
  double reach_y = 0.0;       // box y half-extent + h
  double reach_u = 0.0;       // length / 2 + h * (|ux| + |uy|)
  double reach_v = 0.0;       // width / 2 + h * (|vx| + |vy|)
};

BoxCellTest make_box_cell_test(const OrientedBox& box, double resolution);

/// Row kernel: for k in [0, count) the cell centred at
/// ((first_index + k) * resolution, row_y) is tested and `out[k] |= hit`.
/// Returns the number of hits.
using MarkRowFn = std::size_t (*)(const BoxCellTest& test, double row_y, std::int64_t first_index,
                                  double resolution, std::size_t count, std::uint8_t* out);

/// True iff a[k] != 0 && b[k] != 0 for some k < count.
using AnyAndFn = bool (*)(const std::uint8_t* a, const std::uint8_t* b, std::size_t count);

enum class Isa { kScalar, kAvx2 };

std::string_view to_string(Isa isa);

namespace scalar {
std::size_t mark_row(const BoxCellTest& test, double row_y, std::int64_t first_index,
                     double resolution, std::size_t count, std::uint8_t* out);
bool any_and(const std::uint8_t* a, const std::uint8_t* b, std::size_t count);
}  // namespace scalar

#if defined(DRIVEKIT_HAVE_AVX2)
namespace avx2 {
std::size_t mark_row(const BoxCellTest& test, double row_y, std::int64_t first_index,
                     double resolution, std::size_t count, std::uint8_t* out);
bool any_and(const std::uint8_t* a, const std::uint8_t* b, std::size_t count);
}  // namespace avx2
#endif

/// Whether the running CPU can execute the given variant.
bool isa_available(Isa isa);

/// Best available variant, unless DRIVEKIT_FORCE_SCALAR is set in the
/// environment.
Isa active_isa();

struct Kernels {
  Isa isa;
  MarkRowFn mark_row;
  AnyAndFn any_and;
};

/// Kernel table for `isa`; falls back to scalar when unavailable.
Kernels kernels_for(Isa isa);
const Kernels& active_kernels();

}  // namespace drivekit::simd
