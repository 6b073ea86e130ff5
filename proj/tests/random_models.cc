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

#include "random_models.h"

#include <vector>

namespace yieldplan::testing {

LinearModel random_mip(std::mt19937_64& rng, int nbin, int ncont, int nrows) {
  std::uniform_real_distribution<double> coef(-5.0, 10.0), obj(-3.0, 10.0);
  std::uniform_int_distribution<int> integer(-4, 9);
  std::bernoulli_distribution dense(0.6);
  LinearModel m;
  for (int j = 0; j < nbin; ++j) m.add_variable("b" + std::to_string(j), 0, 1, integer(rng), VarType::Binary);
  for (int j = 0; j < ncont; ++j) m.add_variable("c" + std::to_string(j), 0, 10, obj(rng));
  const int n = nbin + ncont;
  for (int i = 0; i < nrows; ++i) {
    Row r;
    double sum_pos = 0.0;
    for (int j = 0; j < n; ++j) {
      if (!dense(rng)) continue;
      const double c = std::round(coef(rng) * 4) / 4;
      if (c == 0.0) continue;
      r.coefs.push_back({j, c});
      sum_pos += std::max(c, 0.0) * (j < nbin ? 1.0 : 10.0);
    }
    const int kind = static_cast<int>(rng() % 6);
    r.sense = kind < 4 ? RowSense::LessEqual : kind < 5 ? RowSense::GreaterEqual : RowSense::Equal;
    std::uniform_real_distribution<double> frac(0.1, 0.6);
    r.rhs = std::round(sum_pos * frac(rng) * 4) / 4;
    if (r.sense == RowSense::Equal) r.rhs = std::round(r.rhs / 4);
    m.add_row(std::move(r));
  }
  return m;
}

LinearModel random_lp(std::mt19937_64& rng, int nvars, int nrows) {
  std::uniform_real_distribution<double> coef(-10.0, 10.0), bnd(0.0, 20.0);
  std::bernoulli_distribution dense(0.5), coin(0.5);
  LinearModel m;
  for (int j = 0; j < nvars; ++j) {
    const int kind = static_cast<int>(rng() % 5);
    double lo = 0.0, hi = kInf;
    if (kind == 1) hi = bnd(rng);
    if (kind == 2) lo = -bnd(rng), hi = bnd(rng);
    if (kind == 3) lo = -kInf, hi = bnd(rng);
    if (kind == 4) lo = -kInf, hi = kInf;
    m.add_variable("x" + std::to_string(j), lo, hi, coef(rng));
  }
  for (int i = 0; i < nrows; ++i) {
    Row r;
    for (int j = 0; j < nvars; ++j)
      if (dense(rng)) r.coefs.push_back({j, coef(rng) * (coin(rng) ? 1.0 : 100.0)});
    const int kind = static_cast<int>(rng() % 5);
    r.sense = kind < 3 ? RowSense::LessEqual : kind < 4 ? RowSense::GreaterEqual : RowSense::Equal;
    r.rhs = coef(rng) * 5;
    m.add_row(std::move(r));
  }
  return m;
}

BruteForce brute_force_mip(const LinearModel& model) {
  std::vector<int> bins;
  for (std::size_t j = 0; j < model.num_variables(); ++j)
    if (model.variable(static_cast<int>(j)).type == VarType::Binary) bins.push_back(static_cast<int>(j));
  BruteForce best;
  LinearModel relaxed = model;
  for (int j : bins) relaxed.variable(j).type = VarType::Continuous;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bins.size()); ++mask) {
    LinearModel fixed = relaxed;
    for (std::size_t k = 0; k < bins.size(); ++k) {
      const double v = (mask >> k) & 1 ? 1.0 : 0.0;
      fixed.variable(bins[k]).lower = v;
      fixed.variable(bins[k]).upper = v;
    }
    const SolveResult r = solve_lp(fixed);
    if (r.status == SolveStatus::Optimal && r.objective > best.objective) {
      best.feasible = true;
      best.objective = r.objective;
    }
  }
  return best;
}

}  // namespace yieldplan::testing
