// Copyright 2026 The yieldplan Authors
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
#include <cstring>

#include "yieldplan/simd/kernels.h"

namespace yieldplan::simd {

#if YIELDPLAN_HAVE_AVX2
const KernelTable* avx2_kernels_unchecked();
#endif

const KernelTable* avx2_kernels() {
#if YIELDPLAN_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? avx2_kernels_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* env = std::getenv("YIELDPLAN_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return scalar_kernels();
    const KernelTable* v = avx2_kernels();
    return v != nullptr ? *v : scalar_kernels();
  }();
  return chosen;
}

}  // namespace yieldplan::simd
