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

#ifndef YIELDPLAN_SIMD_KERNELS_H_
#define YIELDPLAN_SIMD_KERNELS_H_

#include <cstddef>

namespace yieldplan::simd {

// Hot numeric loops shared by the simplex and the recourse evaluator.
// Every entry has a scalar reference implementation; vector variants must
// agree with it up to floating-point reassociation.
struct KernelTable {
  const char* name;

  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);

  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

  // sum_s pi[s] * (P * min(D[s], z[s]) + O * max(z[s] - D[s], 0))
  double (*expected_revenue)(const double* pi, const double* z,
                             const double* demand, std::size_t n, double P,
                             double O);

  // w[s] = pi[s] * (demand[s] < z[s] ? O : P); returns
  // sum over demand[s] < z[s] of pi[s] * (P - O) * demand[s].
  double (*revenue_slopes)(const double* pi, const double* z,
                           const double* demand, std::size_t n, double P,
                           double O, double* w);
};

const KernelTable& scalar_kernels();

// nullptr when the build or the CPU lacks AVX2+FMA.
const KernelTable* avx2_kernels();

// Picked once on first use: AVX2 when available, unless the environment
// variable YIELDPLAN_SIMD=scalar forces the reference path.
const KernelTable& active_kernels();

}  // namespace yieldplan::simd

#endif  // YIELDPLAN_SIMD_KERNELS_H_
