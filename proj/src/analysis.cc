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

#include "yieldplan/analysis.h"

#include <algorithm>
#include <climits>
#include <limits>
#include <cmath>
#include <ostream>
#include <thread>

#include "yieldplan/benders.h"
#include "yieldplan/errors.h"
#include "yieldplan/extensive.h"
#include "yieldplan/optkernel.h"

namespace yieldplan {

ProductionInstance micro_fixture() {
  ProductionInstance inst;
  inst.products = {"p1"};
  inst.facilities = {"f1"};
  inst.capacity = {20.0};
  inst.unit_cost = {{6.0}};
  inst.full_price = {15.0};
  inst.salvage_price = {2.0};
  inst.levels = {{{{0.0, 10.0}, {10.0, 20.0}}}};
  JointDistribution d0{0, {0}, {{0.5, {1.0}, 8.0}, {0.5, {0.5}, 8.0}}};
  JointDistribution d1{1, {1}, {{0.5, {1.0}, 8.0}, {0.5, {0.9}, 8.0}}};
  inst.distributions = {{d0, d1}};
  return inst;
}

long level_assignment_count(const ProductionInstance& inst) {
  long n = 1;
  for (std::size_t p = 0; p < inst.num_products(); ++p)
    for (std::size_t f = 0; f < inst.num_facilities(); ++f) {
      const long k = static_cast<long>(inst.num_levels(p, f));
      if (k != 0 && n > LONG_MAX / k) return LONG_MAX;
      n *= k;
    }
  return n;
}

namespace {

struct Candidate {
  long index = -1;
  double objective = -kInf;
  MasterSolution solution;
};

// Decodes assignment `code` in mixed radix, (p, f) pairs in row-major order
// with the first pair most significant, so increasing codes are
// lexicographically increasing assignments.
LevelChoice decode(const ProductionInstance& inst, long code) {
  const std::size_t np = inst.num_products(), nf = inst.num_facilities();
  LevelChoice y(np, LevelAssignment(nf, 0));
  for (std::size_t k = np * nf; k-- > 0;) {
    const std::size_t p = k / nf, f = k % nf;
    const long r = static_cast<long>(inst.num_levels(p, f));
    y[p][f] = static_cast<int>(code % r);
    code /= r;
  }
  return y;
}

// LP in (x, z, w, o) with levels and distributions fixed by y.
bool solve_fixed(const ProductionInstance& inst, const DistributionLookup& lookup,
                 const LevelChoice& y, MasterSolution* out) {
  const std::size_t np = inst.num_products(), nf = inst.num_facilities();
  LinearModel m;
  std::vector<std::vector<int>> x(np);
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t f = 0; f < nf; ++f) {
      const auto& lv = inst.levels[p][f][y[p][f]];
      const double hi = std::min(inst.capacity[f], lv.upper);
      if (lv.lower > hi) return false;
      x[p].push_back(m.add_variable("", lv.lower, hi, -inst.unit_cost[p][f]));
    }
  for (std::size_t f = 0; f < nf; ++f) {
    Row r{"", {}, RowSense::LessEqual, inst.capacity[f]};
    for (std::size_t p = 0; p < np; ++p) r.coefs.push_back({x[p][f], 1.0});
    m.add_row(std::move(r));
  }
  for (std::size_t p = 0; p < np; ++p) {
    const std::size_t d = lookup.distribution(p, y[p]);
    for (const auto& sc : inst.distributions[p][d].scenarios) {
      const int z = m.add_variable("", 0.0, kInf, 0.0);
      const int w = m.add_variable("", 0.0, sc.demand, sc.probability * inst.full_price[p]);
      const int o = m.add_variable("", 0.0, kInf, sc.probability * inst.salvage_price[p]);
      Row inv{"", {{z, 1.0}}, RowSense::Equal, 0.0};
      for (std::size_t f = 0; f < nf; ++f)
        if (sc.yields[f] != 0.0) inv.coefs.push_back({x[p][f], -sc.yields[f]});
      m.add_row(std::move(inv));
      m.add_row({"", {{w, 1.0}, {o, 1.0}, {z, -1.0}}, RowSense::Equal, 0.0});
    }
  }
  const SolveResult r = solve_lp(m);
  if (r.status != SolveStatus::Optimal) return false;
  out->x.assign(np, std::vector<double>(nf, 0.0));
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t f = 0; f < nf; ++f) out->x[p][f] = r.x[x[p][f]];
  out->y = y;
  out->objective = r.objective;
  return true;
}

// Objectives within this relative distance count as tied.
constexpr double kTieTolerance = 1e-9;

bool strictly_better(double a, double b) {
  return b == -kInf ? a > b : a > b + kTieTolerance * (1.0 + std::abs(b));
}

void scan(const ProductionInstance& inst, const DistributionLookup& lookup, long first, long last,
          Candidate* best, long* solves) {
  for (long code = first; code < last; ++code) {
    MasterSolution s;
    ++*solves;
    if (!solve_fixed(inst, lookup, decode(inst, code), &s)) continue;
    if (strictly_better(s.objective, best->objective)) {
      best->objective = s.objective;
      best->index = code;
      best->solution = std::move(s);
    }
  }
}

}  // namespace

OracleResult solve_oracle(const ProductionInstance& inst, long budget, int threads) {
  require_valid(inst);
  const long total = level_assignment_count(inst);
  if (total > budget)
    throw OracleTooLargeError(std::to_string(total) + " level assignments exceed the budget of " +
                              std::to_string(budget));
  const DistributionLookup lookup(inst);
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::min<long>(total, 64))));
  std::vector<Candidate> best(threads);
  std::vector<long> solves(threads, 0);
  if (threads == 1) {
    scan(inst, lookup, 0, total, &best[0], &solves[0]);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      const long a = total * t / threads, b = total * (t + 1) / threads;
      pool.emplace_back(scan, std::cref(inst), std::cref(lookup), a, b, &best[t], &solves[t]);
    }
    for (auto& th : pool) th.join();
  }
  // Chunks are in code order, so ties keep the lowest code.
  OracleResult out;
  Candidate* win = &best[0];
  for (auto& c : best) {
    out.lp_solves += solves[&c - best.data()];
    if (strictly_better(c.objective, win->objective)) win = &c;
  }
  if (win->index < 0) throw ModelError("no level assignment admits a feasible plan");
  out.solution = std::move(win->solution);
  out.objective = win->objective;
  out.solution.mu.clear();
  for (std::size_t p = 0; p < inst.num_products(); ++p)
    out.solution.mu.push_back(expected_revenue(inst, p, out.solution.x[p], out.solution.y[p]));
  return out;
}

const char* to_string(EvVariant v) {
  switch (v) {
    case EvVariant::Supply: return "supply";
    case EvVariant::Demand: return "demand";
    case EvVariant::Full: return "full";
  }
  return "unknown";
}

ProductionInstance expected_value_instance(const ProductionInstance& inst, EvVariant variant) {
  require_valid(inst);
  ProductionInstance ev = inst;
  const std::size_t nf = inst.num_facilities();
  for (auto& per_product : ev.distributions) {
    for (auto& dist : per_product) {
      std::vector<double> ey(nf, 0.0);
      double ed = 0.0;
      for (const auto& sc : dist.scenarios) {
        for (std::size_t f = 0; f < nf; ++f) ey[f] += sc.probability * sc.yields[f];
        ed += sc.probability * sc.demand;
      }
      for (auto& y : ey) y = std::clamp(y, 0.0, 1.0);
      switch (variant) {
        case EvVariant::Supply:
          for (auto& sc : dist.scenarios) sc.yields = ey;
          break;
        case EvVariant::Demand:
          for (auto& sc : dist.scenarios) sc.demand = ed;
          break;
        case EvVariant::Full:
          dist.scenarios = {ScenarioRealization{1.0, ey, ed}};
          break;
      }
    }
  }
  return ev;
}

EvSolution solve_expected_value(const ProductionInstance& inst, EvVariant variant, EvMethod method) {
  const ProductionInstance ev = expected_value_instance(inst, variant);
  EvSolution out;
  if (method == EvMethod::Extensive) {
    const ExtensiveSolution sol = solve_extensive(ev, kInf, 1e-9);
    if (sol.result.status != SolveStatus::Optimal)
      throw ModelError(std::string("expected-value problem (") + to_string(variant) + ") did not solve");
    out.decision = sol.master;
    out.ev_objective = sol.result.objective;
  } else {
    BendersOptions o;
    o.epsilon = 1e-9;
    o.time_limit = kInf;
    o.use_vi2 = true;
    const BendersResult sol = solve_iterative(ev, o);
    if (sol.state.status != SolveStatus::Optimal && sol.state.status != SolveStatus::GapLimit)
      throw ModelError(std::string("expected-value problem (") + to_string(variant) + ") did not solve");
    out.decision = sol.solution;
    out.ev_objective = sol.state.best_value;
  }
  // Evaluate under the distribution enforced by the EV levels in the
  // original instance.
  out.true_objective = evaluate_full(inst, out.decision.x, out.decision.y);
  return out;
}

VssReport compute_vss(const ProductionInstance& inst, double sp_objective, bool supply, bool demand, bool full) {
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  VssReport r;
  r.v_sp = sp_objective;
  r.ratio_defined = sp_objective > 0.0;
  auto run = [&](bool on, EvVariant v, EvSolution* sol, double* v_ev, double* vss) {
    if (!on) {
      *v_ev = *vss = kNaN;
      return;
    }
    *sol = solve_expected_value(inst, v);
    *v_ev = sol->true_objective;
    *vss = r.ratio_defined ? (r.v_sp - *v_ev) / r.v_sp : r.v_sp - *v_ev;
  };
  run(supply, EvVariant::Supply, &r.supply, &r.v_ev_supply, &r.vss_supply);
  run(demand, EvVariant::Demand, &r.demand, &r.v_ev_demand, &r.vss_demand);
  run(full, EvVariant::Full, &r.full, &r.v_ev_full, &r.vss_full);
  return r;
}

void write_vss_csv_header(std::ostream& out) {
  out << "instance,v_SP,v_EV_supply,v_EV_demand,v_EV_full,VSS_supply,VSS_demand,VSS_full,ratio_defined,sp_optimal\n";
}

void write_vss_csv_row(std::ostream& out, const std::string& instance_id, const VssReport& r) {
  const auto prec = out.precision(12);
  auto field = [&](double v) -> std::ostream& {
    if (!std::isnan(v)) out << v;
    return out << ',';
  };
  out << instance_id << ',';
  for (double v : {r.v_sp, r.v_ev_supply, r.v_ev_demand, r.v_ev_full, r.vss_supply, r.vss_demand, r.vss_full})
    field(v);
  out << (r.ratio_defined ? "true" : "false")
      << ',' << (r.sp_optimal ? "true" : "false") << '\n';
  out.precision(prec);
}

}  // namespace yieldplan
