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

#include "yieldplan/secondstage.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "yieldplan/errors.h"
#include "yieldplan/simd/kernels.h"

namespace yieldplan {

double scenario_revenue(double P, double O, double demand, double z) {
  if (demand <= z) return P * demand + O * (z - demand);
  return P * z;
}

double inventory(const ProductionInstance& inst, std::size_t p,
                 const std::vector<double>& x_p, std::size_t d, std::size_t s) {
  const auto& sc = inst.distributions.at(p).at(d).scenarios.at(s);
  double z = 0.0;
  for (std::size_t f = 0; f < x_p.size(); ++f) z += sc.yields[f] * x_p[f];
  return z;
}

ScenarioPartition partition(const ProductionInstance& inst, std::size_t p,
                            std::size_t d, const std::vector<double>& x_p) {
  const auto& scen = inst.distributions.at(p).at(d).scenarios;
  ScenarioPartition part;
  part.up_mask.assign((scen.size() + 63) / 64, 0);
  for (std::size_t s = 0; s < scen.size(); ++s) {
    if (scen[s].demand < inventory(inst, p, x_p, d, s)) {
      part.up.push_back(s);
      part.up_mask[s / 64] |= std::uint64_t{1} << (s % 64);
    } else {
      part.down.push_back(s);
    }
  }
  return part;
}

double expected_revenue(const ProductionInstance& inst, std::size_t p,
                        const std::vector<double>& x_p,
                        const LevelAssignment& y_p) {
  const std::size_t d = infer_distribution(inst, p, y_p);
  const double P = inst.full_price[p], O = inst.salvage_price[p];
  double q = 0.0;
  const auto& scen = inst.distributions[p][d].scenarios;
  for (std::size_t s = 0; s < scen.size(); ++s)
    q += scen[s].probability * scenario_revenue(P, O, scen[s].demand, inventory(inst, p, x_p, d, s));
  return q;
}

void check_first_stage(const ProductionInstance& inst, const Allocation& x,
                       const LevelChoice& y) {
  const std::size_t np = inst.num_products(), nf = inst.num_facilities();
  if (x.size() != np || y.size() != np)
    throw ContractViolation("first-stage decision must have one row per product");
  auto tol = [](double v) { return 1e-6 * (1.0 + std::abs(v)); };
  for (std::size_t f = 0; f < nf; ++f) {
    double used = 0.0;
    for (std::size_t p = 0; p < np; ++p) {
      if (x[p].size() != nf || y[p].size() != nf)
        throw ContractViolation("first-stage row of " + inst.products[p] + " has wrong length");
      used += x[p][f];
    }
    if (used > inst.capacity[f] + tol(inst.capacity[f]))
      throw ContractViolation("capacity exceeded at " + inst.facilities[f]);
  }
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t f = 0; f < nf; ++f) {
      const int l = y[p][f];
      if (l < 0 || static_cast<std::size_t>(l) >= inst.levels[p][f].size())
        throw ContractViolation("invalid level choice at (" + inst.products[p] + "," + inst.facilities[f] + ")");
      const auto& lv = inst.levels[p][f][l];
      const double hi = std::min(inst.capacity[f], lv.upper);
      if (x[p][f] < lv.lower - tol(lv.lower) || x[p][f] > hi + tol(hi))
        throw ContractViolation("allocation outside level bounds at (" + inst.products[p] + "," +
                                inst.facilities[f] + ")");
    }
  }
}

double evaluate_full(const ProductionInstance& inst, const Allocation& x,
                     const LevelChoice& y) {
  check_first_stage(inst, x, y);
  double v = 0.0;
  for (std::size_t p = 0; p < inst.num_products(); ++p) {
    for (std::size_t f = 0; f < inst.num_facilities(); ++f) v -= inst.unit_cost[p][f] * x[p][f];
    v += expected_revenue(inst, p, x[p], y[p]);
  }
  return v;
}

RecourseEvaluation evaluate_recourse(const ProductionInstance& inst,
                                     const Allocation& x, const LevelChoice& y) {
  check_first_stage(inst, x, y);
  RecourseEvaluation ev;
  for (std::size_t p = 0; p < inst.num_products(); ++p) {
    const std::size_t d = infer_distribution(inst, p, y[p]);
    const double P = inst.full_price[p], O = inst.salvage_price[p];
    ev.distribution.push_back(d);
    auto& out = ev.outcome.emplace_back();
    double q = 0.0;
    const auto& scen = inst.distributions[p][d].scenarios;
    for (std::size_t s = 0; s < scen.size(); ++s) {
      ScenarioOutcome o;
      o.inventory = inventory(inst, p, x[p], d, s);
      o.full_price_sales = std::min(o.inventory, scen[s].demand);
      o.overage = o.inventory - o.full_price_sales;
      o.revenue = scenario_revenue(P, O, scen[s].demand, o.inventory);
      q += scen[s].probability * o.revenue;
      out.push_back(o);
    }
    ev.expected_revenue.push_back(q);
  }
  return ev;
}

InstanceBounds compute_bounds(const ProductionInstance& inst) {
  const std::size_t np = inst.num_products(), nf = inst.num_facilities();
  InstanceBounds b;
  b.inventory_cap.resize(np);
  b.overage_cap.resize(np);
  b.revenue_cap.assign(np, 0.0);
  b.max_yield.assign(np, std::vector<double>(nf, 0.0));
  b.expected_yield.resize(np);
  for (std::size_t p = 0; p < np; ++p) {
    const double P = inst.full_price[p], O = inst.salvage_price[p];
    const std::size_t nd = inst.num_distributions(p);
    b.inventory_cap[p].resize(nd);
    b.overage_cap[p].resize(nd);
    b.expected_yield[p].assign(nf, std::vector<double>(nd, 0.0));
    std::vector<double> top_upper(nf, 0.0);
    for (std::size_t f = 0; f < nf; ++f)
      for (const auto& lv : inst.levels[p][f]) top_upper[f] = std::max(top_upper[f], lv.upper);
    for (std::size_t d = 0; d < nd; ++d) {
      const auto& dist = inst.distributions[p][d];
      double m = 0.0;
      for (const auto& sc : dist.scenarios) {
        double zbar = 0.0, n = 0.0;
        for (std::size_t f = 0; f < nf; ++f) {
          const double u = inst.levels[p][f][dist.enforced_level[f]].upper;
          zbar += sc.yields[f] * std::min(inst.capacity[f], u);
          n += sc.yields[f] * std::min(inst.capacity[f], top_upper[f]);
          b.max_yield[p][f] = std::max(b.max_yield[p][f], sc.yields[f]);
          b.expected_yield[p][f][d] += sc.probability * sc.yields[f];
        }
        b.inventory_cap[p][d].push_back(zbar);
        b.overage_cap[p][d].push_back(n);
        m += sc.probability * (P * std::min(sc.demand, zbar) + O * std::max(zbar - sc.demand, 0.0));
      }
      b.revenue_cap[p] = std::max(b.revenue_cap[p], m);
    }
  }
  return b;
}

ScenarioTable::ScenarioTable(const ProductionInstance& inst)
    : num_facilities_(inst.num_facilities()),
      price_(inst.full_price),
      salvage_(inst.salvage_price) {
  blocks_.resize(inst.num_products());
  for (std::size_t p = 0; p < inst.num_products(); ++p) {
    for (const auto& dist : inst.distributions[p]) {
      Block b;
      const std::size_t ns = dist.scenarios.size();
      b.yields.assign(num_facilities_ * ns, 0.0);
      for (std::size_t s = 0; s < ns; ++s) {
        b.pi.push_back(dist.scenarios[s].probability);
        b.demand.push_back(dist.scenarios[s].demand);
        for (std::size_t f = 0; f < num_facilities_; ++f)
          b.yields[f * ns + s] = dist.scenarios[s].yields[f];
      }
      blocks_[p].push_back(std::move(b));
    }
  }
}

void ScenarioTable::fill_inventory(const Block& b, const std::vector<double>& x_p,
                                   std::vector<double>* z) const {
  const std::size_t ns = b.pi.size();
  z->assign(ns, 0.0);
  const auto& k = simd::active_kernels();
  for (std::size_t f = 0; f < num_facilities_; ++f)
    if (x_p[f] != 0.0) k.axpy(x_p[f], b.yields.data() + f * ns, z->data(), ns);
}

double ScenarioTable::expected_revenue(std::size_t p, std::size_t d,
                                       const std::vector<double>& x_p) const {
  const Block& b = blocks_[p][d];
  std::vector<double> z;
  fill_inventory(b, x_p, &z);
  return simd::active_kernels().expected_revenue(b.pi.data(), z.data(), b.demand.data(),
                                                 b.pi.size(), price_[p], salvage_[p]);
}

void ScenarioTable::revenue_slopes(std::size_t p, std::size_t d,
                                   const std::vector<double>& x_p,
                                   std::vector<double>* a, double* c) const {
  const Block& b = blocks_[p][d];
  const std::size_t ns = b.pi.size();
  const auto& k = simd::active_kernels();
  std::vector<double> z, w(ns);
  fill_inventory(b, x_p, &z);
  *c = k.revenue_slopes(b.pi.data(), z.data(), b.demand.data(), ns, price_[p], salvage_[p], w.data());
  a->assign(num_facilities_, 0.0);
  for (std::size_t f = 0; f < num_facilities_; ++f)
    (*a)[f] = k.dot(w.data(), b.yields.data() + f * ns, ns);
}

}  // namespace yieldplan
