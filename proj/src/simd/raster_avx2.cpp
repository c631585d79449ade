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

// Compiled with -mavx2 only; callers reach it through the runtime dispatch.

#include <immintrin.h>

#include <bit>
#include <cmath>

#include "drivekit/simd/raster_kernels.hpp"

namespace drivekit::simd::avx2 {

namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

}  // namespace

std::size_t mark_row(const BoxCellTest& t, double row_y, std::int64_t first_index,
                     double resolution, std::size_t count, std::uint8_t* out) {
  const double dy = row_y - t.cy;
  if (!(std::abs(dy) <= t.reach_y)) return 0;
  const __m256d uy_dy = _mm256_set1_pd(t.uy * dy);
  const __m256d vy_dy = _mm256_set1_pd(t.vy * dy);
  const __m256d ux = _mm256_set1_pd(t.ux);
  const __m256d vx = _mm256_set1_pd(t.vx);
  const __m256d cx = _mm256_set1_pd(t.cx);
  const __m256d reach_x = _mm256_set1_pd(t.reach_x);
  const __m256d reach_u = _mm256_set1_pd(t.reach_u);
  const __m256d reach_v = _mm256_set1_pd(t.reach_v);
  const __m256d res = _mm256_set1_pd(resolution);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);

  std::size_t hits = 0;
  std::size_t k = 0;
  for (; k + 4 <= count; k += 4) {
    // first_index + k is an exact integer in double for any realistic grid.
    const __m256d idx =
        _mm256_add_pd(_mm256_set1_pd(static_cast<double>(first_index + static_cast<std::int64_t>(k))), lane);
    const __m256d x = _mm256_mul_pd(idx, res);
    const __m256d dx = _mm256_sub_pd(x, cx);
    const __m256d pu = _mm256_add_pd(_mm256_mul_pd(ux, dx), uy_dy);
    const __m256d pv = _mm256_add_pd(_mm256_mul_pd(vx, dx), vy_dy);
    __m256d ok = _mm256_cmp_pd(abs_pd(dx), reach_x, _CMP_LE_OQ);
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(abs_pd(pu), reach_u, _CMP_LE_OQ));
    ok = _mm256_and_pd(ok, _mm256_cmp_pd(abs_pd(pv), reach_v, _CMP_LE_OQ));
    const int mask = _mm256_movemask_pd(ok);
    if (mask == 0) continue;
    for (int l = 0; l < 4; ++l) out[k + static_cast<std::size_t>(l)] |= static_cast<std::uint8_t>((mask >> l) & 1);
    hits += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
  }
  if (k < count) {
    hits += scalar::mark_row(t, row_y, first_index + static_cast<std::int64_t>(k), resolution,
                             count - k, out + k);
  }
  return hits;
}

bool any_and(const std::uint8_t* a, const std::uint8_t* b, std::size_t count) {
  const __m256i zero = _mm256_setzero_si256();
  std::size_t k = 0;
  for (; k + 32 <= count; k += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + k));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + k));
    const __m256i na = _mm256_cmpeq_epi8(va, zero);
    const __m256i nb = _mm256_cmpeq_epi8(vb, zero);
    // Lanes where both are non-zero: neither compare fired.
    const __m256i either_zero = _mm256_or_si256(na, nb);
    if (static_cast<unsigned>(_mm256_movemask_epi8(either_zero)) != 0xFFFFFFFFu) return true;
  }
  return scalar::any_and(a + k, b + k, count - k);
}

}  // namespace drivekit::simd::avx2
