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

#ifndef YIELDPLAN_BENDERS_H_
#define YIELDPLAN_BENDERS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "yieldplan/model.h"
#include "yieldplan/optkernel.h"
#include "yieldplan/secondstage.h"

namespace yieldplan {

// mu_p <= sum_f a_f x_pf + c + M_p (|F| - sum_f y_{p,f,levels[f]})
struct OptimalityCut {
  std::size_t p = 0;
  std::size_t d = 0;
  std::vector<double> a;
  double c = 0.0;
  double big_m = 0.0;
  LevelAssignment levels;
  ScenarioPartition partition;
  std::vector<double> origin;  // x_p of the candidate that generated the cut
};

double cut_rhs(const OptimalityCut& cut, const std::vector<double>& x_p,
               const LevelAssignment& y_p);

// Relaxed master problem: x, binary y, and one revenue variable mu_p per
// product bounded by M_p. No scenario variables.
struct RmpModel {
  LinearModel model;
  std::vector<std::vector<int>> x;               // [p][f]
  std::vector<std::vector<std::vector<int>>> y;  // [p][f][l]
  std::vector<int> mu;                           // [p]
  InstanceBounds bounds;
};

RmpModel build_rmp(const ProductionInstance& inst, bool use_vi1, bool use_vi2);

Row cut_row(const RmpModel& rmp, const OptimalityCut& cut);

// Reads (x, y, mu) out of an RMP solution vector.
MasterSolution rmp_candidate(const RmpModel& rmp, const std::vector<double>& v);

// RMP solution vector for a master solution (mu taken from `sol.mu`).
std::vector<double> rmp_point(const RmpModel& rmp, const MasterSolution& sol);

// Cut for product p at the candidate when mu_p exceeds Q_p by more than
// 1e-6 (1 + |Q_p|); std::nullopt otherwise.
std::optional<OptimalityCut> separate_cut(const ProductionInstance& inst,
                                          std::size_t p,
                                          const MasterSolution& candidate,
                                          double revenue_cap);
std::optional<OptimalityCut> separate_cut(const ProductionInstance& inst,
                                          std::size_t p,
                                          const MasterSolution& candidate);

struct BendersOptions {
  double epsilon = 1e-4;
  double time_limit = 1800.0;  // seconds
  bool use_vi1 = false;
  bool use_vi2 = false;
  // Relative gap of each RMP solve; by default min(1e-4, epsilon), at
  // least 1e-10.
  std::optional<double> mip_gap;
};

struct IterationRecord {
  int k = 0;
  double v_rmp = 0.0;
  double v_mp = 0.0;
  double v_best = 0.0;
  double gap = 0.0;
  int cuts_added = 0;
  double elapsed_seconds = 0.0;
};

struct BendersState {
  int iteration = 0;
  double best_value = 0.0;   // v_MP^Best
  double bound = kInf;       // v_RMP^k, kept nonincreasing
  double root_bound = kInf;  // v_RMP^1
  double gap = kInf;
  SolveStatus status = SolveStatus::TimeLimit;
  std::vector<OptimalityCut> cuts;
  std::vector<IterationRecord> log;
  long nodes = 0;
  long lp_iterations = 0;
  double elapsed_seconds = 0.0;
};

struct BendersResult {
  MasterSolution solution;  // mu holds Q_p of the returned decision
  BendersState state;
};

BendersResult solve_iterative(const ProductionInstance& inst,
                              const BendersOptions& options = {});

// One branch-and-bound over the RMP; integer points are checked for
// violated cuts in the incumbent callback.
BendersResult solve_branch_and_cut(const ProductionInstance& inst,
                                   const BendersOptions& options = {});

// Optimal value of the first RMP (no cuts), solved to a 1e-12 gap.
double rmp_root_bound(const ProductionInstance& inst, bool use_vi1,
                      bool use_vi2);

// Header: k,v_RMP,v_MP,v_MP_best,gap,cuts_added,elapsed_seconds
void write_iteration_csv(const BendersState& state, std::ostream& out);

}  // namespace yieldplan

#endif  // YIELDPLAN_BENDERS_H_
