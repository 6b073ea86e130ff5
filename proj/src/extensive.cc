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

#include "yieldplan/extensive.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace yieldplan {
namespace {

std::string idx(const char* base, std::initializer_list<std::size_t> ids) {
  std::string s = base;
  for (std::size_t i : ids) s += "_" + std::to_string(i);
  return s;
}

}  // namespace

ExtensiveFormModel build_extensive(const ProductionInstance& inst) {
  require_valid(inst);
  const InstanceBounds bounds = compute_bounds(inst);
  const std::size_t np = inst.num_products(), nf = inst.num_facilities();
  ExtensiveFormModel ef;
  LinearModel& m = ef.model;

  ef.x.resize(np);
  ef.y.resize(np);
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t f = 0; f < nf; ++f)
      ef.x[p].push_back(m.add_variable(idx("x", {p, f}), 0.0, kInf, -inst.unit_cost[p][f]));
    ef.y[p].resize(nf);
    for (std::size_t f = 0; f < nf; ++f)
      for (std::size_t l = 0; l < inst.num_levels(p, f); ++l)
        ef.y[p][f].push_back(m.add_variable(idx("y", {p, f, l}), 0.0, 1.0, 0.0, VarType::Binary));
  }
  ef.delta.resize(np);
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t d = 0; d < inst.num_distributions(p); ++d)
      ef.delta[p].push_back(m.add_variable(idx("delta", {p, d}), 0.0, 1.0, 0.0, VarType::Binary));

  // Capacity.
  for (std::size_t f = 0; f < nf; ++f) {
    Row r{idx("cap", {f}), {}, RowSense::LessEqual, inst.capacity[f]};
    for (std::size_t p = 0; p < np; ++p) r.coefs.push_back({ef.x[p][f], 1.0});
    m.add_row(std::move(r));
  }
  // One level per (p, f) and level bounds tightened by capacity.
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t f = 0; f < nf; ++f) {
      Row one{idx("level", {p, f}), {}, RowSense::Equal, 1.0};
      Row lower{idx("lo", {p, f}), {{ef.x[p][f], 1.0}}, RowSense::GreaterEqual, 0.0};
      Row upper{idx("hi", {p, f}), {{ef.x[p][f], 1.0}}, RowSense::LessEqual, 0.0};
      for (std::size_t l = 0; l < inst.num_levels(p, f); ++l) {
        const auto& lv = inst.levels[p][f][l];
        const int yv = ef.y[p][f][l];
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
  // Distribution selection.
  for (std::size_t p = 0; p < np; ++p) {
    Row pick{idx("pick", {p}), {}, RowSense::Equal, 1.0};
    for (std::size_t d = 0; d < inst.num_distributions(p); ++d) {
      pick.coefs.push_back({ef.delta[p][d], 1.0});
      Row link{idx("link", {p, d}), {{ef.delta[p][d], -static_cast<double>(nf)}}, RowSense::GreaterEqual, 0.0};
      const auto& lv = inst.distributions[p][d].enforced_level;
      for (std::size_t f = 0; f < nf; ++f) link.coefs.push_back({ef.y[p][f][lv[f]], 1.0});
      m.add_row(std::move(link));
    }
    m.add_row(std::move(pick));
  }
  // Second stage.
  for (auto* v : {&ef.z, &ef.w, &ef.o, &ef.mu, &ef.rho}) v->resize(np);
  for (std::size_t p = 0; p < np; ++p) {
    const double P = inst.full_price[p], O = inst.salvage_price[p];
    for (std::size_t d = 0; d < inst.num_distributions(p); ++d) {
      for (auto* v : {&ef.z, &ef.w, &ef.o, &ef.mu, &ef.rho}) (*v)[p].emplace_back();
      const int dl = ef.delta[p][d];
      const auto& scen = inst.distributions[p][d].scenarios;
      for (std::size_t s = 0; s < scen.size(); ++s) {
        const double D = scen[s].demand, N = bounds.overage_cap[p][d][s], pi = scen[s].probability;
        const int z = m.add_variable(idx("z", {p, d, s}), 0.0, kInf, 0.0);
        const int w = m.add_variable(idx("w", {p, d, s}), 0.0, D, 0.0);
        const int o = m.add_variable(idx("o", {p, d, s}), 0.0, kInf, 0.0);
        const int mu = m.add_variable(idx("mu", {p, d, s}), 0.0, D == 0.0 ? 0.0 : kInf, pi * P);
        const int rho = m.add_variable(idx("rho", {p, d, s}), 0.0, kInf, pi * O);
        ef.z[p][d].push_back(z);
        ef.w[p][d].push_back(w);
        ef.o[p][d].push_back(o);
        ef.mu[p][d].push_back(mu);
        ef.rho[p][d].push_back(rho);

        Row inv{idx("inv", {p, d, s}), {{z, 1.0}}, RowSense::Equal, 0.0};
        for (std::size_t f = 0; f < nf; ++f)
          if (scen[s].yields[f] != 0.0) inv.coefs.push_back({ef.x[p][f], -scen[s].yields[f]});
        m.add_row(std::move(inv));
        m.add_row({idx("bal", {p, d, s}), {{w, 1.0}, {o, 1.0}, {z, -1.0}}, RowSense::Equal, 0.0});
        if (D != 0.0) {
          m.add_row({idx("mu_w", {p, d, s}), {{mu, 1.0}, {w, -1.0}}, RowSense::LessEqual, 0.0});
          m.add_row({idx("mu_d", {p, d, s}), {{mu, 1.0}, {dl, -D}}, RowSense::LessEqual, 0.0});
          m.add_row({idx("mu_lo", {p, d, s}), {{mu, 1.0}, {w, -1.0}, {dl, -D}}, RowSense::GreaterEqual, -D});
        }
        m.add_row({idx("rho_o", {p, d, s}), {{rho, 1.0}, {o, -1.0}}, RowSense::LessEqual, 0.0});
        m.add_row({idx("rho_n", {p, d, s}), {{rho, 1.0}, {dl, -N}}, RowSense::LessEqual, 0.0});
        m.add_row({idx("rho_lo", {p, d, s}), {{rho, 1.0}, {o, -1.0}, {dl, -N}}, RowSense::GreaterEqual, -N});
      }
    }
  }
  return ef;
}

ExtensiveSolution extract_extensive(const ProductionInstance& inst,
                                    const ExtensiveFormModel& ef,
                                    const SolveResult& result) {
  ExtensiveSolution out;
  out.result = result;
  if (!result.has_solution()) return out;
  const auto& v = result.x;
  const std::size_t np = inst.num_products(), nf = inst.num_facilities();
  out.master.x.assign(np, std::vector<double>(nf, 0.0));
  out.master.y.assign(np, LevelAssignment(nf, 0));
  for (std::size_t p = 0; p < np; ++p) {
    for (std::size_t f = 0; f < nf; ++f) {
      out.master.x[p][f] = std::max(0.0, v[ef.x[p][f]]);
      const auto& ys = ef.y[p][f];
      std::size_t best = 0;
      for (std::size_t l = 1; l < ys.size(); ++l)
        if (v[ys[l]] > v[ys[best]]) best = l;
      out.master.y[p][f] = static_cast<int>(best);
    }
    std::size_t dbest = 0;
    for (std::size_t d = 1; d < ef.delta[p].size(); ++d)
      if (v[ef.delta[p][d]] > v[ef.delta[p][dbest]]) dbest = d;
    out.chosen.push_back(dbest);
    for (std::size_t d = 0; d < ef.delta[p].size(); ++d) {
      const double dl = v[ef.delta[p][d]];
      for (std::size_t s = 0; s < ef.mu[p][d].size(); ++s) {
        const double w = v[ef.w[p][d][s]], o = v[ef.o[p][d][s]];
        out.linearization_error = std::max(
            {out.linearization_error, std::abs(v[ef.mu[p][d][s]] - dl * w), std::abs(v[ef.rho[p][d][s]] - dl * o)});
      }
    }
  }
  out.master.objective = result.objective;
  out.recourse = evaluate_recourse(inst, out.master.x, out.master.y);
  out.master.mu = out.recourse.expected_revenue;
  return out;
}

ExtensiveSolution solve_extensive(const ProductionInstance& inst, double time_limit,
                                  double rel_gap) {
  const ExtensiveFormModel ef = build_extensive(inst);
  MipOptions opt;
  opt.time_limit = time_limit;
  opt.rel_gap = rel_gap;
  return extract_extensive(inst, ef, solve_mip(ef.model, opt));
}

}  // namespace yieldplan
