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

#include <cstdlib>

#include "drivekit/simd/raster_kernels.hpp"

namespace drivekit::simd {

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(DRIVEKIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  if (std::getenv("DRIVEKIT_FORCE_SCALAR") != nullptr) return Isa::kScalar;
  return isa_available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

Kernels kernels_for(Isa isa) {
#if defined(DRIVEKIT_HAVE_AVX2)
  if (isa == Isa::kAvx2 && isa_available(Isa::kAvx2)) {
    return {Isa::kAvx2, &avx2::mark_row, &avx2::any_and};
  }
#endif
  (void)isa;
  return {Isa::kScalar, &scalar::mark_row, &scalar::any_and};
}

const Kernels& active_kernels() {
  static const Kernels k = kernels_for(active_isa());
  return k;
}

}  // namespace drivekit::simd
