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

#include "yieldplan/model.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "yieldplan/errors.h"

namespace yieldplan {
namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

class Reporter {
 public:
  explicit Reporter(ValidationReport* out) : out_(out) {}

  void add(std::string code, std::string message, int p = -1, int f = -1,
           int l = -1, int d = -1, int s = -1) {
    out_->push_back(
        Violation{std::move(code), std::move(message), p, f, l, d, s});
  }

 private:
  ValidationReport* out_;
};

std::string at(const ProductionInstance& inst, std::size_t p) {
  return "(" + inst.products[p] + ")";
}
std::string at(const ProductionInstance& inst, std::size_t p, std::size_t f) {
  return "(" + inst.products[p] + "," + inst.facilities[f] + ")";
}

// Returns false when the shape is too broken to continue.
bool check_shapes(const ProductionInstance& inst, Reporter& r) {
  const std::size_t np = inst.num_products();
  const std::size_t nf = inst.num_facilities();
  bool ok = true;
  auto shape = [&](const std::string& what) {
    r.add("shape", what);
    ok = false;
  };
  if (inst.capacity.size() != nf) shape("capacity must have one entry per facility");
  if (inst.full_price.size() != np) shape("price must have one entry per product");
  if (inst.salvage_price.size() != np) shape("salvage must have one entry per product");
  if (inst.unit_cost.size() != np) {
    shape("cost must have one row per product");
  } else {
    for (std::size_t p = 0; p < np; ++p)
      if (inst.unit_cost[p].size() != nf) shape("cost row " + inst.products[p] + " has wrong length");
  }
  if (inst.levels.size() != np) {
    shape("levels must have one row per product");
  } else {
    for (std::size_t p = 0; p < np; ++p)
      if (inst.levels[p].size() != nf) shape("levels row " + inst.products[p] + " has wrong length");
  }
  if (inst.distributions.size() != np) shape("distributions must have one entry per product");
  return ok;
}

void check_prices(const ProductionInstance& inst, Reporter& r) {
  for (std::size_t p = 0; p < inst.num_products(); ++p) {
    const int pi = static_cast<int>(p);
    if (!(inst.full_price[p] > inst.salvage_price[p]))
      r.add("price_not_above_salvage", "price <= salvage at " + at(inst, p), pi);
    for (std::size_t f = 0; f < inst.num_facilities(); ++f) {
      const int fi = static_cast<int>(f);
      if (!(inst.unit_cost[p][f] > 0.0))
        r.add("cost_not_positive", "cost <= 0 at " + at(inst, p, f), pi, fi);
      if (!(inst.salvage_price[p] < inst.unit_cost[p][f]))
        r.add("salvage_not_below_cost", "salvage ≥ cost at " + at(inst, p, f), pi, fi);
    }
  }
  for (std::size_t f = 0; f < inst.num_facilities(); ++f)
    if (!(inst.capacity[f] >= 0.0))
      r.add("capacity_negative", "capacity < 0 at (" + inst.facilities[f] + ")", -1, static_cast<int>(f));
}

void check_levels(const ProductionInstance& inst, Reporter& r) {
  for (std::size_t p = 0; p < inst.num_products(); ++p) {
    for (std::size_t f = 0; f < inst.num_facilities(); ++f) {
      const auto& lv = inst.levels[p][f];
      const int pi = static_cast<int>(p), fi = static_cast<int>(f);
      if (lv.empty()) {
        r.add("no_levels", "no production levels at " + at(inst, p, f), pi, fi);
        continue;
      }
      bool has_zero = false;
      for (std::size_t l = 0; l < lv.size(); ++l) {
        const int li = static_cast<int>(l);
        if (!(lv[l].lower >= 0.0))
          r.add("level_negative", "level lower bound < 0 at " + at(inst, p, f), pi, fi, li);
        if (!(lv[l].lower <= lv[l].upper))
          r.add("level_inverted", "level lower > upper at " + at(inst, p, f), pi, fi, li);
        if (lv[l].lower <= 0.0 && 0.0 <= lv[l].upper) has_zero = true;
        for (std::size_t k = l + 1; k < lv.size(); ++k) {
          // Closed intervals may touch; only interiors must be disjoint.
          if (std::max(lv[l].lower, lv[k].lower) < std::min(lv[l].upper, lv[k].upper))
            r.add("levels_overlap",
                  "levels " + std::to_string(l) + " and " + std::to_string(k) +
                      " overlap at " + at(inst, p, f),
                  pi, fi, li);
        }
      }
      if (!has_zero)
        r.add("no_zero_level", "no level admits zero production at " + at(inst, p, f), pi, fi);
    }
  }
}

void check_distributions(const ProductionInstance& inst, Reporter& r) {
  const std::size_t nf = inst.num_facilities();
  for (std::size_t p = 0; p < inst.num_products(); ++p) {
    const int pi = static_cast<int>(p);
    std::map<LevelAssignment, std::size_t> seen;
    bool all_valid = true;
    for (std::size_t d = 0; d < inst.distributions[p].size(); ++d) {
      const auto& dist = inst.distributions[p][d];
      const int di = static_cast<int>(d);
      const std::string where = "(" + inst.products[p] + ",d" + std::to_string(d) + ")";
      if (dist.enforced_level.size() != nf) {
        r.add("shape", "enforced levels of " + where + " must have one entry per facility", pi, -1, -1, di);
        all_valid = false;
      } else {
        for (std::size_t f = 0; f < nf; ++f) {
          const int l = dist.enforced_level[f];
          if (l < 0 || static_cast<std::size_t>(l) >= inst.levels[p][f].size()) {
            r.add("enforced_level_invalid",
                  "enforced level " + std::to_string(l) + " out of range at " + at(inst, p, f) +
                      " for d" + std::to_string(d),
                  pi, static_cast<int>(f), l, di);
            all_valid = false;
          }
        }
        auto [it, inserted] = seen.emplace(dist.enforced_level, d);
        if (!inserted)
          r.add("map_not_injective",
                "d" + std::to_string(it->second) + " and d" + std::to_string(d) +
                    " enforce the same levels for " + inst.products[p],
                pi, -1, -1, di);
      }
      if (dist.scenarios.empty())
        r.add("no_scenarios", "distribution " + where + " has no scenarios", pi, -1, -1, di);
      double total = 0.0;
      for (std::size_t s = 0; s < dist.scenarios.size(); ++s) {
        const auto& sc = dist.scenarios[s];
        const int si = static_cast<int>(s);
        total += sc.probability;
        if (!(sc.probability > 0.0 && sc.probability <= 1.0))
          r.add("probability_range", "probability outside (0,1] in " + where, pi, -1, -1, di, si);
        if (!(sc.demand >= 0.0))
          r.add("demand_negative", "negative demand in " + where, pi, -1, -1, di, si);
        if (sc.yields.size() != nf) {
          r.add("shape", "yields in " + where + " must have one entry per facility", pi, -1, -1, di, si);
          continue;
        }
        for (std::size_t f = 0; f < nf; ++f)
          if (!(sc.yields[f] >= 0.0 && sc.yields[f] <= 1.0))
            r.add("yield_range", "yield outside [0,1] in " + where, pi, static_cast<int>(f), -1, di, si);
      }
      if (!dist.scenarios.empty() && std::abs(total - 1.0) > kProbabilityTolerance)
        r.add("probability_sum", "probabilities sum to " + fmt_num(total) + " in " + where, pi, -1, -1, di);
    }
    // Surjectivity: with an injective valid map, totality is a count check.
    if (all_valid) {
      std::size_t combos = 1;
      for (std::size_t f = 0; f < nf; ++f) combos *= inst.levels[p][f].size();
      if (seen.size() != combos)
        r.add("map_not_total",
              std::to_string(seen.size()) + " of " + std::to_string(combos) +
                  " level assignments are mapped for " + inst.products[p],
              pi);
    }
  }
}

}  // namespace

ValidationReport validate_instance(const ProductionInstance& inst) {
  ValidationReport report;
  Reporter r(&report);
  if (inst.products.empty()) r.add("shape", "instance has no products");
  if (inst.facilities.empty()) r.add("shape", "instance has no facilities");
  if (!check_shapes(inst, r)) return report;
  check_prices(inst, r);
  check_levels(inst, r);
  check_distributions(inst, r);
  return report;
}

void require_valid(const ProductionInstance& inst) {
  const ValidationReport report = validate_instance(inst);
  if (report.empty()) return;
  std::string msg = "invalid instance:";
  for (std::size_t i = 0; i < report.size() && i < 5; ++i) msg += " [" + report[i].message + "]";
  if (report.size() > 5) msg += " ... (" + std::to_string(report.size()) + " violations)";
  throw ValidationError(msg);
}

LevelAssignment enforced_levels(const ProductionInstance& inst, std::size_t p,
                                std::size_t d) {
  if (p >= inst.distributions.size() || d >= inst.distributions[p].size())
    throw LookupError("unknown distribution (p=" + std::to_string(p) + ", d=" + std::to_string(d) + ")");
  return inst.distributions[p][d].enforced_level;
}

std::size_t infer_distribution(const ProductionInstance& inst, std::size_t p,
                               const LevelAssignment& assignment) {
  if (p >= inst.distributions.size()) throw LookupError("unknown product " + std::to_string(p));
  if (assignment.size() != inst.num_facilities())
    throw LookupError("level assignment must have one entry per facility");
  for (std::size_t d = 0; d < inst.distributions[p].size(); ++d)
    if (inst.distributions[p][d].enforced_level == assignment) return d;
  throw MapNotTotalError("no distribution of " + inst.products[p] +
                         " is enforced by the given level assignment");
}

DistributionLookup::DistributionLookup(const ProductionInstance& inst) {
  const std::size_t np = inst.num_products(), nf = inst.num_facilities();
  radix_.assign(np, std::vector<std::size_t>(nf, 1));
  counts_.assign(np, std::vector<std::size_t>(nf, 0));
  by_code_.resize(np);
  for (std::size_t p = 0; p < np; ++p) {
    std::size_t combos = 1;
    for (std::size_t f = nf; f-- > 0;) {
      radix_[p][f] = combos;
      counts_[p][f] = inst.levels[p][f].size();
      combos *= inst.levels[p][f].size();
    }
    by_code_[p].assign(combos, -1);
    for (std::size_t d = 0; d < inst.distributions[p].size(); ++d) {
      const auto& lv = inst.distributions[p][d].enforced_level;
      if (lv.size() != nf) continue;
      bool in_range = true;
      for (std::size_t f = 0; f < nf; ++f)
        in_range = in_range && lv[f] >= 0 && static_cast<std::size_t>(lv[f]) < counts_[p][f];
      if (!in_range) continue;
      by_code_[p][code(p, lv)] = static_cast<long>(d);
    }
  }
}

std::size_t DistributionLookup::code(std::size_t p,
                                     const LevelAssignment& assignment) const {
  std::size_t c = 0;
  for (std::size_t f = 0; f < assignment.size(); ++f)
    c += radix_[p][f] * static_cast<std::size_t>(assignment[f]);
  return c;
}

std::size_t DistributionLookup::distribution(
    std::size_t p, const LevelAssignment& assignment) const {
  if (p >= by_code_.size() || assignment.size() != radix_[p].size())
    throw LookupError("level assignment does not match the instance shape");
  for (std::size_t f = 0; f < assignment.size(); ++f)
    if (assignment[f] < 0 || static_cast<std::size_t>(assignment[f]) >= counts_[p][f])
      throw MapNotTotalError("level index out of range in assignment");
  const std::size_t c = code(p, assignment);
  if (c >= by_code_[p].size() || by_code_[p][c] < 0)
    throw MapNotTotalError("no distribution is enforced by the given level assignment");
  return static_cast<std::size_t>(by_code_[p][c]);
}

}  // namespace yieldplan
