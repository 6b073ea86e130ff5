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

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>

#include "yieldplan/simd/kernels.h"

namespace yieldplan::simd {
namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double expected_revenue(const double* pi, const double* z, const double* demand,
                        std::size_t n, double P, double O) {
  const __m256d vp = _mm256_set1_pd(P), vo = _mm256_set1_pd(O), zero = _mm256_setzero_pd();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d zz = _mm256_loadu_pd(z + i), dd = _mm256_loadu_pd(demand + i);
    const __m256d sold = _mm256_min_pd(dd, zz);
    const __m256d over = _mm256_max_pd(_mm256_sub_pd(zz, dd), zero);
    const __m256d rev = _mm256_fmadd_pd(vo, over, _mm256_mul_pd(vp, sold));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(pi + i), rev, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i)
    s += pi[i] * (P * std::min(demand[i], z[i]) + O * std::max(z[i] - demand[i], 0.0));
  return s;
}

double revenue_slopes(const double* pi, const double* z, const double* demand,
                      std::size_t n, double P, double O, double* w) {
  const __m256d vp = _mm256_set1_pd(P), vo = _mm256_set1_pd(O), vpo = _mm256_set1_pd(P - O);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d pp = _mm256_loadu_pd(pi + i), dd = _mm256_loadu_pd(demand + i);
    const __m256d up = _mm256_cmp_pd(dd, _mm256_loadu_pd(z + i), _CMP_LT_OQ);
    _mm256_storeu_pd(w + i, _mm256_mul_pd(pp, _mm256_blendv_pd(vp, vo, up)));
    acc = _mm256_add_pd(acc, _mm256_and_pd(up, _mm256_mul_pd(_mm256_mul_pd(pp, vpo), dd)));
  }
  double c = hsum(acc);
  for (; i < n; ++i) {
    if (demand[i] < z[i]) {
      w[i] = pi[i] * O;
      c += pi[i] * (P - O) * demand[i];
    } else {
      w[i] = pi[i] * P;
    }
  }
  return c;
}

}  // namespace

const KernelTable* avx2_kernels_unchecked() {
  static const KernelTable table{"avx2", dot, axpy, expected_revenue, revenue_slopes};
  return &table;
}

}  // namespace yieldplan::simd
