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

#ifndef YIELDPLAN_SECONDSTAGE_H_
#define YIELDPLAN_SECONDSTAGE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "yieldplan/model.h"

namespace yieldplan {

// x[p][f] allocations and y[p][f] chosen level indices.
using Allocation = std::vector<std::vector<double>>;
using LevelChoice = std::vector<LevelAssignment>;

struct MasterSolution {
  Allocation x;
  LevelChoice y;
  std::vector<double> mu;  // revenue estimate per product, empty if unused
  double objective = 0.0;
};

struct ScenarioPartition {
  std::vector<std::size_t> up;    // D < z
  std::vector<std::size_t> down;  // D >= z
  std::vector<std::uint64_t> up_mask;  // bit s set iff s is in `up`
};

struct ScenarioOutcome {
  double inventory = 0.0;
  double full_price_sales = 0.0;
  double overage = 0.0;
  double revenue = 0.0;
};

struct RecourseEvaluation {
  std::vector<std::size_t> distribution;            // d(y_p) per product
  std::vector<std::vector<ScenarioOutcome>> outcome;  // [p][s] under d(y_p)
  std::vector<double> expected_revenue;             // Q_p
};

struct InstanceBounds {
  std::vector<std::vector<std::vector<double>>> inventory_cap;  // Zbar[p][d][s]
  std::vector<std::vector<std::vector<double>>> overage_cap;    // N[p][d][s]
  std::vector<double> revenue_cap;                              // M_p
  std::vector<std::vector<double>> max_yield;                   // Ybar[p][f]
  std::vector<std::vector<std::vector<double>>> expected_yield; // Ye[p][f][d]
};

// Optimal revenue of the single-scenario sales problem.
double scenario_revenue(double P, double O, double demand, double z);

// z_pds = sum_f Y_pfds * x_pf.
double inventory(const ProductionInstance& inst, std::size_t p,
                 const std::vector<double>& x_p, std::size_t d, std::size_t s);

ScenarioPartition partition(const ProductionInstance& inst, std::size_t p,
                            std::size_t d, const std::vector<double>& x_p);

// Q_p(x, y) under the distribution enforced by y_p.
double expected_revenue(const ProductionInstance& inst, std::size_t p,
                        const std::vector<double>& x_p,
                        const LevelAssignment& y_p);

// Throws ContractViolation if (x, y) breaks capacity, level choice or
// level bounds (tolerance 1e-6 relative).
void check_first_stage(const ProductionInstance& inst, const Allocation& x,
                       const LevelChoice& y);

// -sum C x + sum_p Q_p(x, y). Calls check_first_stage first.
double evaluate_full(const ProductionInstance& inst, const Allocation& x,
                     const LevelChoice& y);

RecourseEvaluation evaluate_recourse(const ProductionInstance& inst,
                                     const Allocation& x, const LevelChoice& y);

InstanceBounds compute_bounds(const ProductionInstance& inst);

// Structure-of-arrays copy of the scenario data for fast repeated Q_p and
// slope evaluation. yields are stored facility-major per (p, d).
class ScenarioTable {
 public:
  explicit ScenarioTable(const ProductionInstance& inst);

  std::size_t num_scenarios(std::size_t p, std::size_t d) const {
    return blocks_[p][d].pi.size();
  }

  double expected_revenue(std::size_t p, std::size_t d,
                          const std::vector<double>& x_p) const;

  // Cut data at x_p: slopes a[f] and constant c with
  // Q_p(x) = sum_f a[f] x_f + c on the partition of x_p.
  void revenue_slopes(std::size_t p, std::size_t d,
                      const std::vector<double>& x_p, std::vector<double>* a,
                      double* c) const;

 private:
  struct Block {
    std::vector<double> pi;
    std::vector<double> demand;
    std::vector<double> yields;  // [f * S + s]
  };
  void fill_inventory(const Block& b, const std::vector<double>& x_p,
                      std::vector<double>* z) const;

  std::size_t num_facilities_;
  std::vector<double> price_, salvage_;
  std::vector<std::vector<Block>> blocks_;
};

}  // namespace yieldplan

#endif  // YIELDPLAN_SECONDSTAGE_H_
