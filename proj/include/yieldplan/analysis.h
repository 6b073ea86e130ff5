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

#ifndef YIELDPLAN_ANALYSIS_H_
#define YIELDPLAN_ANALYSIS_H_

#include <iosfwd>
#include <string>

#include "yieldplan/model.h"
#include "yieldplan/secondstage.h"

namespace yieldplan {

// One product, one facility, levels [0,10] and [10,20], B=20, C=6, P=15,
// O=2. l0 enforces yields {1.0, 0.5}, l1 enforces {1.0, 0.9}; demand 8 and
// probability 1/2 in every scenario. Optimum 63 at x=10 on level l1.
ProductionInstance micro_fixture();

inline constexpr long kDefaultOracleBudget = 100000;

struct OracleResult {
  MasterSolution solution;
  double objective = 0.0;
  long lp_solves = 0;
};

// Solves the fixed-distribution LP for every complete level assignment and
// keeps the best; ties (within 1e-9 relative) go to the lexicographically
// smallest assignment. Throws OracleTooLargeError when the number of assignments
// exceeds `budget`. `threads` > 1 splits the enumeration; the result does
// not depend on it.
OracleResult solve_oracle(const ProductionInstance& inst,
                          long budget = kDefaultOracleBudget, int threads = 1);

// Number of complete level assignments, saturated at LONG_MAX.
long level_assignment_count(const ProductionInstance& inst);

enum class EvVariant { Supply, Demand, Full };

const char* to_string(EvVariant v);

// Instance with yields (Supply), demands (Demand) or both (Full) replaced by
// their expectations under each distribution. Demand expectations are taken
// per (product, distribution).
ProductionInstance expected_value_instance(const ProductionInstance& inst,
                                           EvVariant variant);

struct EvSolution {
  MasterSolution decision;  // optimal first stage of the EV problem
  double ev_objective = 0.0;  // its value in the EV problem
  double true_objective = 0.0;  // evaluate_full on the original instance
};

// Exact solver for the EV problem: Benders with VI2 at epsilon 1e-9, or the
// extensive form at relative gap 1e-9. Both return an optimal decision; the
// extensive form is only practical for small instances.
enum class EvMethod { Benders, Extensive };

EvSolution solve_expected_value(const ProductionInstance& inst,
                                EvVariant variant,
                                EvMethod method = EvMethod::Benders);

struct VssReport {
  double v_sp = 0.0;
  double v_ev_supply = 0.0;
  double v_ev_demand = 0.0;
  double v_ev_full = 0.0;
  // (v_SP - v_EV) / v_SP, or v_SP - v_EV when ratio_defined is false.
  double vss_supply = 0.0;
  double vss_demand = 0.0;
  double vss_full = 0.0;
  bool ratio_defined = true;
  // False when v_SP is only the best value found within a time limit.
  bool sp_optimal = true;
  EvSolution supply, demand, full;
};

// Variants switched off are left NaN and written as empty CSV fields.
VssReport compute_vss(const ProductionInstance& inst, double sp_objective,
                      bool supply = true, bool demand = true,
                      bool full = true);

// Columns: instance,v_SP,v_EV_supply,v_EV_demand,v_EV_full,VSS_supply,
// VSS_demand,VSS_full,ratio_defined,sp_optimal
void write_vss_csv_header(std::ostream& out);
void write_vss_csv_row(std::ostream& out, const std::string& instance_id,
                       const VssReport& r);

}  // namespace yieldplan

#endif  // YIELDPLAN_ANALYSIS_H_
