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

#include "instances.h"

#include <algorithm>

namespace yieldplan::testing {

MasterSolution random_feasible(const ProductionInstance& inst, std::mt19937_64& rng) {
  const std::size_t np = inst.num_products(), nf = inst.num_facilities();
  MasterSolution s;
  s.x.assign(np, std::vector<double>(nf, 0.0));
  s.y.assign(np, LevelAssignment(nf, 0));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t f = 0; f < nf; ++f)
      s.y[p][f] = std::uniform_int_distribution<int>(0, static_cast<int>(inst.num_levels(p, f)) - 1)(rng);
  for (std::size_t f = 0; f < nf; ++f) {
    const double cap = inst.capacity[f];
    // Drop products to a zero-admitting level until the lower bounds fit.
    double lower_sum = 0.0;
    for (std::size_t p = 0; p < np; ++p) lower_sum += inst.levels[p][f][s.y[p][f]].lower;
    for (std::size_t p = 0; p < np && lower_sum > cap; ++p) {
      const auto& lv = inst.levels[p][f];
      for (std::size_t l = 0; l < lv.size(); ++l)
        if (lv[l].lower == 0.0) {
          lower_sum -= lv[s.y[p][f]].lower;
          s.y[p][f] = static_cast<int>(l);
          break;
        }
    }
    double extra_sum = 0.0;
    std::vector<double> extra(np);
    for (std::size_t p = 0; p < np; ++p) {
      const auto& lv = inst.levels[p][f][s.y[p][f]];
      extra[p] = u(rng) * std::max(0.0, std::min(cap, lv.upper) - lv.lower);
      extra_sum += extra[p];
    }
    const double scale = extra_sum > cap - lower_sum ? (cap - lower_sum) / extra_sum : 1.0;
    for (std::size_t p = 0; p < np; ++p)
      s.x[p][f] = inst.levels[p][f][s.y[p][f]].lower + scale * extra[p];
  }
  return s;
}

GeneratorConfig small_config(int products, int facilities, int levels, int scenarios,
                             std::uint64_t seed) {
  GeneratorConfig c;
  c.n_products = products;
  c.n_facilities = facilities;
  c.n_levels = levels;
  c.scenarios = scenarios;
  c.seed = seed;
  c.demand_mean = 100.0;
  c.demand_std = 75.0;
  return c;
}

}  // namespace yieldplan::testing
