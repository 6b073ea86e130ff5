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
#include <cmath>
#include <queue>
#include <vector>

#include "yieldplan/optkernel.h"

namespace yieldplan {
namespace {

struct Node {
  double bound;
  long id;
  std::vector<std::pair<int, double>> fixes;  // binary id -> fixed value
  Basis basis;
};

struct NodeOrder {
  // Best bound first, FIFO among equal bounds.
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

bool within_gap(double bound, double incumbent, double rel_gap) {
  if (incumbent == -kInf) return false;
  return (bound - incumbent) / (1e-10 + std::abs(incumbent)) <= rel_gap;
}

}  // namespace

SolveResult solve_mip(const LinearModel& model, const MipOptions& opt) {
  const auto t0 = Clock::now();
  model.validate();
  LpOptions lpo;
  lpo.feasibility_tol = opt.feasibility_tol;
  if (std::isfinite(opt.time_limit))
    lpo.deadline = t0 + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(std::max(0.0, opt.time_limit)));
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

  std::vector<int> binaries;
  for (std::size_t j = 0; j < model.num_variables(); ++j)
    if (model.variable(static_cast<int>(j)).type == VarType::Binary) binaries.push_back(static_cast<int>(j));

  LpSolver lp(model, lpo);
  if (binaries.empty() && !opt.callback && !opt.initial_incumbent) {
    SolveResult r = lp.solve();
    r.stats.nodes = 1;
    r.stats.wall_seconds = elapsed();
    return r;
  }

  SolveResult res;
  std::vector<double> inc_x;
  double inc = -kInf;
  if (opt.initial_incumbent) {
    inc_x = *opt.initial_incumbent;
    if (inc_x.size() != model.num_variables()) inc_x.clear();
    else inc = model.objective_value(inc_x);
  }

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push(Node{kInf, next_id++, {}, {}});
  double pruned_bound = -kInf;  // largest bound discarded by the gap rule
  bool timed_out = false;
  bool unbounded = false;

  auto global_bound = [&](double current) {
    double b = std::max(current, inc);
    if (!open.empty()) b = std::max(b, open.top().bound);
    return b;
  };

  while (!open.empty()) {
    if (lpo.deadline && Clock::now() > *lpo.deadline) {
      timed_out = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (within_gap(node.bound, inc, opt.rel_gap)) {
      pruned_bound = std::max(pruned_bound, node.bound);
      while (!open.empty()) {
        pruned_bound = std::max(pruned_bound, open.top().bound);
        open.pop();
      }
      break;
    }
    ++res.stats.nodes;

    for (int j : binaries) {
      const auto& v = model.variable(j);
      lp.set_bounds(j, v.lower, v.upper);
    }
    for (const auto& [j, val] : node.fixes) lp.set_bounds(j, val, val);
    if (!node.basis.empty()) lp.set_basis(node.basis);

    double node_value = -kInf;
    while (true) {
      SolveResult r = lp.solve();
      res.stats.iterations += r.stats.iterations;
      if (r.status == SolveStatus::TimeLimit) {
        timed_out = true;
        node_value = node.bound;
        break;
      }
      if (r.status == SolveStatus::Infeasible) break;
      if (r.status == SolveStatus::Unbounded) {
        unbounded = true;
        res.ray = r.ray;
        break;
      }
      const double lpobj = std::min(r.objective, node.bound);
      if (within_gap(lpobj, inc, opt.rel_gap)) {
        pruned_bound = std::max(pruned_bound, lpobj);
        break;
      }
      int branch = -1;
      double most = opt.integrality_tol;
      for (int j : binaries) {
        const double f = std::abs(r.x[j] - std::round(r.x[j]));
        if (f > most) most = f, branch = j;
      }
      if (branch < 0) {
        std::vector<double> x = r.x;
        for (int j : binaries) x[j] = std::round(x[j]);
        if (opt.callback) {
          std::vector<Row> rows = opt.callback(x);
          if (!rows.empty()) {
            for (const Row& row : rows) lp.add_row(row);
            res.stats.cuts_added += static_cast<long>(rows.size());
            continue;
          }
        }
        const double v = model.objective_value(x);
        if (v > inc) {
          inc = v;
          inc_x = std::move(x);
        }
        break;
      }
      node_value = lpobj;
      Basis basis = lp.basis();
      std::vector<std::pair<int, double>> down = node.fixes, up = node.fixes;
      down.push_back({branch, 0.0});
      up.push_back({branch, 1.0});
      open.push(Node{lpobj, next_id++, std::move(down), basis});
      open.push(Node{lpobj, next_id++, std::move(up), std::move(basis)});
      break;
    }
    if (timed_out) {
      open.push(node);  // keep its bound in the reported bound
      break;
    }
    if (unbounded) break;
    if (opt.record_trace) {
      res.bound_trace.push_back(global_bound(-kInf));
      res.incumbent_trace.push_back(inc);
    }
    (void)node_value;
  }

  res.x = inc_x;
  res.objective = inc_x.empty() ? -kInf : inc;
  if (unbounded) {
    res.status = SolveStatus::Unbounded;
    res.bound = kInf;
  } else if (timed_out) {
    res.status = SolveStatus::TimeLimit;
    res.bound = global_bound(pruned_bound);
  } else {
    res.status = inc_x.empty() ? SolveStatus::Infeasible : SolveStatus::Optimal;
    res.bound = inc_x.empty() ? -kInf : std::max(inc, pruned_bound);
  }
  res.stats.wall_seconds = elapsed();
  return res;
}

}  // namespace yieldplan
