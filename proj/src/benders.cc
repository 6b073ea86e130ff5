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

#include "yieldplan/benders.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <string>
#include <tuple>

#include "yieldplan/errors.h"

namespace yieldplan {
namespace {

using CutKey = std::tuple<std::size_t, std::size_t, std::vector<std::uint64_t>>;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// x = 0 with every (p, f) at the first level that admits zero production.
MasterSolution zero_decision(const ProductionInstance& inst) {
  MasterSolution s;
  const std::size_t np = inst.num_products(), nf = inst.num_facilities();
  s.x.assign(np, std::vector<double>(nf, 0.0));
  s.y.assign(np, LevelAssignment(nf, 0));
  s.mu.assign(np, 0.0);
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t f = 0; f < nf; ++f)
      for (std::size_t l = 0; l < inst.num_levels(p, f); ++l)
        if (inst.levels[p][f][l].lower <= 0.0) {
          s.y[p][f] = static_cast<int>(l);
          break;
        }
  return s;
}

double relative_gap(double bound, double best) {
  double gap = bound > 0.0 ? (bound - best) / bound : bound - best;
  return std::max(gap, 0.0);
}

double rmp_gap(const BendersOptions& o) {
  if (o.mip_gap) return *o.mip_gap;
  return std::max(1e-10, std::min(1e-4, o.epsilon));
}

// Fills mu with Q_p and objective with the true MP value.
void price_decision(const ProductionInstance& inst, const ScenarioTable& table,
                    const DistributionLookup& lookup, MasterSolution* s) {
  s->mu.assign(inst.num_products(), 0.0);
  double v = 0.0;
  for (std::size_t p = 0; p < inst.num_products(); ++p) {
    const std::size_t d = lookup.distribution(p, s->y[p]);
    s->mu[p] = table.expected_revenue(p, d, s->x[p]);
    v += s->mu[p];
    for (std::size_t f = 0; f < inst.num_facilities(); ++f) v -= inst.unit_cost[p][f] * s->x[p][f];
  }
  s->objective = v;
}

}  // namespace

double cut_rhs(const OptimalityCut& cut, const std::vector<double>& x_p,
               const LevelAssignment& y_p) {
  double v = cut.c;
  int matched = 0;
  for (std::size_t f = 0; f < cut.a.size(); ++f) {
    v += cut.a[f] * x_p[f];
    matched += y_p[f] == cut.levels[f];
  }
  return v + cut.big_m * static_cast<double>(static_cast<int>(cut.a.size()) - matched);
}

RmpModel build_rmp(const ProductionInstance& inst, bool use_vi1, bool use_vi2) {
  require_valid(inst);
  RmpModel rmp;
  rmp.bounds = compute_bounds(inst);
  LinearModel& m = rmp.model;
  const std::size_t np = inst.num_products(), nf = inst.num_facilities();
  rmp.x.resize(np);
  rmp.y.resize(np);
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t f = 0; f < nf; ++f)
      rmp.x[p].push_back(m.add_variable("x_" + std::to_string(p) + "_" + std::to_string(f), 0.0, kInf,
                                        -inst.unit_cost[p][f]));
    rmp.y[p].resize(nf);
    for (std::size_t f = 0; f < nf; ++f)
      for (std::size_t l = 0; l < inst.num_levels(p, f); ++l)
        rmp.y[p][f].push_back(m.add_variable(
            "y_" + std::to_string(p) + "_" + std::to_string(f) + "_" + std::to_string(l), 0.0, 1.0, 0.0,
            VarType::Binary));
  }
  for (std::size_t p = 0; p < np; ++p)
    rmp.mu.push_back(m.add_variable("mu_" + std::to_string(p), 0.0, rmp.bounds.revenue_cap[p], 1.0));

  for (std::size_t f = 0; f < nf; ++f) {
    Row r{"cap_" + std::to_string(f), {}, RowSense::LessEqual, inst.capacity[f]};
    for (std::size_t p = 0; p < np; ++p) r.coefs.push_back({rmp.x[p][f], 1.0});
    m.add_row(std::move(r));
  }
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t f = 0; f < nf; ++f) {
      const std::string at = std::to_string(p) + "_" + std::to_string(f);
      Row one{"level_" + at, {}, RowSense::Equal, 1.0};
      Row lower{"lo_" + at, {{rmp.x[p][f], 1.0}}, RowSense::GreaterEqual, 0.0};
      Row upper{"hi_" + at, {{rmp.x[p][f], 1.0}}, RowSense::LessEqual, 0.0};
      for (std::size_t l = 0; l < inst.num_levels(p, f); ++l) {
        const auto& lv = inst.levels[p][f][l];
        const int yv = rmp.y[p][f][l];
        one.coefs.push_back({yv, 1.0});
        if (lv.lower != 0.0) lower.coefs.push_back({yv, -lv.lower});
        const double cap = std::min(inst.capacity[f], lv.upper);
        if (cap != 0.0) upper.coefs.push_back({yv, -cap});
      }
      m.add_row(std::move(one));
      if (lower.coefs.size() > 1) m.add_row(std::move(lower));
      m.add_row(std::move(upper));
    }
  }
  for (std::size_t p = 0; p < np; ++p) {
    const double P = inst.full_price[p];
    if (use_vi1) {
      Row r{"vi1_" + std::to_string(p), {{rmp.mu[p], 1.0}}, RowSense::LessEqual, 0.0};
      for (std::size_t f = 0; f < nf; ++f) r.coefs.push_back({rmp.x[p][f], -P * rmp.bounds.max_yield[p][f]});
      m.add_row(std::move(r));
    }
    if (use_vi2) {
      Row r{"vi2_" + std::to_string(p), {{rmp.mu[p], 1.0}}, RowSense::LessEqual, 0.0};
      for (std::size_t f = 0; f < nf; ++f) {
        const auto& ye = rmp.bounds.expected_yield[p][f];
        r.coefs.push_back({rmp.x[p][f], -P * *std::max_element(ye.begin(), ye.end())});
      }
      m.add_row(std::move(r));
    }
  }
  return rmp;
}

Row cut_row(const RmpModel& rmp, const OptimalityCut& cut) {
  const std::size_t nf = cut.a.size();
  Row r{"cut_" + std::to_string(cut.p) + "_" + std::to_string(cut.d), {{rmp.mu[cut.p], 1.0}},
        RowSense::LessEqual, cut.c + cut.big_m * static_cast<double>(nf)};
  for (std::size_t f = 0; f < nf; ++f) {
    if (cut.a[f] != 0.0) r.coefs.push_back({rmp.x[cut.p][f], -cut.a[f]});
    if (cut.big_m != 0.0) r.coefs.push_back({rmp.y[cut.p][f][cut.levels[f]], cut.big_m});
  }
  return r;
}

MasterSolution rmp_candidate(const RmpModel& rmp, const std::vector<double>& v) {
  MasterSolution s;
  const std::size_t np = rmp.x.size();
  for (std::size_t p = 0; p < np; ++p) {
    const std::size_t nf = rmp.x[p].size();
    auto& xr = s.x.emplace_back(nf, 0.0);
    auto& yr = s.y.emplace_back(nf, 0);
    for (std::size_t f = 0; f < nf; ++f) {
      xr[f] = std::max(0.0, v[rmp.x[p][f]]);
      const auto& ys = rmp.y[p][f];
      std::size_t best = 0;
      for (std::size_t l = 1; l < ys.size(); ++l)
        if (v[ys[l]] > v[ys[best]]) best = l;
      yr[f] = static_cast<int>(best);
    }
    s.mu.push_back(v[rmp.mu[p]]);
  }
  return s;
}

std::vector<double> rmp_point(const RmpModel& rmp, const MasterSolution& sol) {
  std::vector<double> v(rmp.model.num_variables(), 0.0);
  for (std::size_t p = 0; p < rmp.x.size(); ++p) {
    for (std::size_t f = 0; f < rmp.x[p].size(); ++f) {
      v[rmp.x[p][f]] = sol.x[p][f];
      v[rmp.y[p][f][sol.y[p][f]]] = 1.0;
    }
    v[rmp.mu[p]] = std::min(sol.mu[p], rmp.bounds.revenue_cap[p]);
  }
  return v;
}

std::optional<OptimalityCut> separate_cut(const ProductionInstance& inst, std::size_t p,
                                          const MasterSolution& candidate, double revenue_cap) {
  const auto& x_p = candidate.x.at(p);
  const std::size_t d = infer_distribution(inst, p, candidate.y.at(p));
  const double q = expected_revenue(inst, p, x_p, candidate.y[p]);
  if (!(candidate.mu.at(p) > q + 1e-6 * (1.0 + std::abs(q)))) return std::nullopt;

  const double P = inst.full_price[p], O = inst.salvage_price[p];
  const auto& scen = inst.distributions[p][d].scenarios;
  OptimalityCut cut;
  cut.p = p;
  cut.d = d;
  cut.levels = inst.distributions[p][d].enforced_level;
  cut.big_m = revenue_cap;
  cut.partition = partition(inst, p, d, x_p);
  cut.origin = x_p;
  cut.a.assign(inst.num_facilities(), 0.0);
  for (std::size_t s : cut.partition.down)
    for (std::size_t f = 0; f < cut.a.size(); ++f) cut.a[f] += scen[s].probability * P * scen[s].yields[f];
  for (std::size_t s : cut.partition.up) {
    for (std::size_t f = 0; f < cut.a.size(); ++f) cut.a[f] += scen[s].probability * O * scen[s].yields[f];
    cut.c += scen[s].probability * (P - O) * scen[s].demand;
  }
  return cut;
}

std::optional<OptimalityCut> separate_cut(const ProductionInstance& inst, std::size_t p,
                                          const MasterSolution& candidate) {
  return separate_cut(inst, p, candidate, compute_bounds(inst).revenue_cap.at(p));
}

BendersResult solve_iterative(const ProductionInstance& inst, const BendersOptions& opt) {
  const auto t0 = Clock::now();
  RmpModel rmp = build_rmp(inst, opt.use_vi1, opt.use_vi2);
  const ScenarioTable table(inst);
  const DistributionLookup lookup(inst);

  BendersResult out;
  BendersState& st = out.state;
  out.solution = zero_decision(inst);
  price_decision(inst, table, lookup, &out.solution);
  st.best_value = 0.0;
  std::set<CutKey> seen;

  while (true) {
    const double remaining = opt.time_limit - seconds_since(t0);
    ++st.iteration;
    MipOptions mo;
    mo.rel_gap = rmp_gap(opt);
    mo.time_limit = std::max(0.0, remaining);
    mo.initial_incumbent = rmp_point(rmp, out.solution);
    const SolveResult r = solve_mip(rmp.model, mo);
    st.nodes += r.stats.nodes;
    st.lp_iterations += r.stats.iterations;
    st.bound = std::min(st.bound, r.bound);
    if (st.iteration == 1) st.root_bound = r.bound;

    IterationRecord rec;
    rec.k = st.iteration;
    rec.v_rmp = st.bound;

    bool stop = false;
    if (!r.has_solution()) {
      // Cannot happen with the zero decision as incumbent unless time ran out.
      st.status = SolveStatus::TimeLimit;
      stop = true;
    } else {
      MasterSolution cand = rmp_candidate(rmp, r.x);
      const std::vector<double> mu_bar = cand.mu;
      price_decision(inst, table, lookup, &cand);
      rec.v_mp = cand.objective;
      std::vector<OptimalityCut> saved;
      for (std::size_t p = 0; p < inst.num_products(); ++p) {
        MasterSolution probe = cand;
        probe.mu = mu_bar;
        auto cut = separate_cut(inst, p, probe, rmp.bounds.revenue_cap[p]);
        if (!cut) continue;
        CutKey key{cut->p, cut->d, cut->partition.up_mask};
        if (!seen.insert(key).second) continue;
        saved.push_back(std::move(*cut));
      }
      if (cand.objective > st.best_value) {
        st.best_value = cand.objective;
        out.solution = cand;
      }
      rec.cuts_added = static_cast<int>(saved.size());
      if (saved.empty()) {
        st.status = r.status == SolveStatus::TimeLimit ? SolveStatus::TimeLimit : SolveStatus::Optimal;
        stop = true;
      } else {
        st.gap = relative_gap(st.bound, st.best_value);
        if (st.gap <= opt.epsilon) {
          st.status = SolveStatus::GapLimit;
          stop = true;
        } else if (r.status == SolveStatus::TimeLimit || seconds_since(t0) > opt.time_limit) {
          st.status = SolveStatus::TimeLimit;
          stop = true;
        }
        for (auto& c : saved) {
          rmp.model.add_row(cut_row(rmp, c));
          st.cuts.push_back(std::move(c));
        }
      }
    }
    st.gap = relative_gap(st.bound, st.best_value);
    rec.v_best = st.best_value;
    rec.gap = st.gap;
    rec.elapsed_seconds = seconds_since(t0);
    st.log.push_back(rec);
    if (stop) break;
  }
  st.elapsed_seconds = seconds_since(t0);
  return out;
}

BendersResult solve_branch_and_cut(const ProductionInstance& inst, const BendersOptions& opt) {
  const auto t0 = Clock::now();
  RmpModel rmp = build_rmp(inst, opt.use_vi1, opt.use_vi2);
  const ScenarioTable table(inst);
  const DistributionLookup lookup(inst);

  BendersResult out;
  BendersState& st = out.state;
  out.solution = zero_decision(inst);
  price_decision(inst, table, lookup, &out.solution);
  std::set<CutKey> seen;

  MipOptions mo;
  mo.rel_gap = std::max(1e-10, opt.epsilon);
  mo.time_limit = opt.time_limit;
  mo.initial_incumbent = rmp_point(rmp, out.solution);
  mo.callback = [&](const std::vector<double>& v) {
    ++st.iteration;
    const MasterSolution cand = rmp_candidate(rmp, v);
    std::vector<Row> rows;
    for (std::size_t p = 0; p < inst.num_products(); ++p) {
      auto cut = separate_cut(inst, p, cand, rmp.bounds.revenue_cap[p]);
      if (!cut) continue;
      CutKey key{cut->p, cut->d, cut->partition.up_mask};
      if (!seen.insert(key).second) continue;
      rows.push_back(cut_row(rmp, *cut));
      st.cuts.push_back(std::move(*cut));
    }
    MasterSolution priced = cand;
    price_decision(inst, table, lookup, &priced);
    if (priced.objective > st.best_value) {
      st.best_value = priced.objective;
      out.solution = priced;
    }
    IterationRecord rec;
    rec.k = st.iteration;
    rec.v_rmp = kInf;
    rec.v_mp = priced.objective;
    rec.v_best = st.best_value;
    rec.gap = kInf;
    rec.cuts_added = static_cast<int>(rows.size());
    rec.elapsed_seconds = seconds_since(t0);
    st.log.push_back(rec);
    return rows;
  };
  const SolveResult r = solve_mip(rmp.model, mo);
  st.nodes = r.stats.nodes;
  st.lp_iterations = r.stats.iterations;
  st.bound = std::max(r.bound, st.best_value);
  st.gap = relative_gap(st.bound, st.best_value);
  st.status = r.status == SolveStatus::Optimal ? SolveStatus::Optimal : r.status;
  if (!st.log.empty()) {
    st.log.back().v_rmp = st.bound;
    st.log.back().gap = st.gap;
  }
  st.elapsed_seconds = seconds_since(t0);
  return out;
}

double rmp_root_bound(const ProductionInstance& inst, bool use_vi1, bool use_vi2) {
  const RmpModel rmp = build_rmp(inst, use_vi1, use_vi2);
  MipOptions mo;
  mo.rel_gap = 1e-12;
  const SolveResult r = solve_mip(rmp.model, mo);
  if (r.status != SolveStatus::Optimal) throw ModelError("root relaxed master problem did not solve");
  return r.objective;
}

void write_iteration_csv(const BendersState& state, std::ostream& out) {
  const auto prec = out.precision(17);
  out << "k,v_RMP,v_MP,v_MP_best,gap,cuts_added,elapsed_seconds\n";
  for (const auto& r : state.log)
    out << r.k << ',' << r.v_rmp << ',' << r.v_mp << ',' << r.v_best << ',' << r.gap << ',' << r.cuts_added
        << ',' << r.elapsed_seconds << '\n';
  out.precision(prec);
}

}  // namespace yieldplan
