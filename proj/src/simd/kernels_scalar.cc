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

#include <algorithm>

#include "yieldplan/simd/kernels.h"

namespace yieldplan::simd {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double expected_revenue(const double* pi, const double* z, const double* demand,
                        std::size_t n, double P, double O) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += pi[i] * (P * std::min(demand[i], z[i]) + O * std::max(z[i] - demand[i], 0.0));
  return s;
}

double revenue_slopes(const double* pi, const double* z, const double* demand,
                      std::size_t n, double P, double O, double* w) {
  double c = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
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

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", dot, axpy, expected_revenue, revenue_slopes};
  return table;
}

}  // namespace yieldplan::simd
