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

#ifndef YIELDPLAN_EXTENSIVE_H_
#define YIELDPLAN_EXTENSIVE_H_

#include <vector>

#include "yieldplan/model.h"
#include "yieldplan/optkernel.h"
#include "yieldplan/secondstage.h"

namespace yieldplan {

// Deterministic equivalent with McCormick products mu = delta * w and
// rho = delta * o. Index maps give variable ids in `model`.
struct ExtensiveFormModel {
  LinearModel model;
  std::vector<std::vector<int>> x;               // [p][f]
  std::vector<std::vector<std::vector<int>>> y;  // [p][f][l]
  std::vector<std::vector<int>> delta;           // [p][d]
  // [p][d][s]
  std::vector<std::vector<std::vector<int>>> z, w, o, mu, rho;
};

// Throws ValidationError for invalid instances.
ExtensiveFormModel build_extensive(const ProductionInstance& inst);

struct ExtensiveSolution {
  SolveResult result;
  MasterSolution master;            // empty x/y when no incumbent was found
  std::vector<std::size_t> chosen;  // d with delta_pd = 1, per product
  RecourseEvaluation recourse;
  // Largest |mu - delta w| and |rho - delta o|.
  double linearization_error = 0.0;
};

// Maps a solution vector of the extensive model back to (x, y, d).
ExtensiveSolution extract_extensive(const ProductionInstance& inst,
                                    const ExtensiveFormModel& ef,
                                    const SolveResult& result);

ExtensiveSolution solve_extensive(const ProductionInstance& inst,
                                  double time_limit = kInf,
                                  double rel_gap = 1e-6);

}  // namespace yieldplan

#endif  // YIELDPLAN_EXTENSIVE_H_
