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
#include <chrono>
#include <cmath>

#include "yieldplan/analysis.h"
#include "yieldplan/cli.h"
#include "yieldplan/errors.h"
#include "yieldplan/extensive.h"

namespace yieldplan::cli {

namespace {

double gap_of(double bound, double best) {
  if (!std::isfinite(bound)) return kInf;
  const double g = bound > 0.0 ? (bound - best) / bound : bound - best;
  return std::max(g, 0.0);
}

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

void fill_recourse(const ProductionInstance& inst, MethodRun* run) {
  if (!run->has_solution) return;
  const RecourseEvaluation rec = evaluate_recourse(inst, run->solution.x, run->solution.y);
  run->distributions = rec.distribution;
  run->expected_revenue = rec.expected_revenue;
}

}  // namespace

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names = {"extensive", "bbm", "bbm-vi1", "bbm-vi2", "bbm-bc", "oracle"};
  return names;
}

bool is_method(const std::string& name) {
  const auto& m = method_names();
  return std::find(m.begin(), m.end(), name) != m.end();
}

MethodRun run_method(const ProductionInstance& inst, const std::string& method, double gap, double time_limit,
                     int threads) {
  if (!is_method(method)) throw ConfigError("unknown method '" + method + "'");
  require_valid(inst);
  const auto t0 = std::chrono::steady_clock::now();
  MethodRun run;
  run.method = method;

  if (method == "extensive") {
    const ExtensiveSolution sol = solve_extensive(inst, time_limit, gap);
    run.status = sol.result.status;
    run.has_solution = sol.result.has_solution();
    run.bound = sol.result.bound;
    run.iterations = sol.result.stats.iterations;
    run.nodes = sol.result.stats.nodes;
    if (run.has_solution) {
      run.solution = sol.master;
      run.objective = sol.result.objective;
    }
  } else if (method == "oracle") {
    const OracleResult r = solve_oracle(inst, kDefaultOracleBudget, threads);
    run.status = SolveStatus::Optimal;
    run.has_solution = true;
    run.solution = r.solution;
    run.objective = r.objective;
    run.bound = r.objective;
    run.iterations = r.lp_solves;
  } else {
    BendersOptions o;
    o.epsilon = gap;
    o.time_limit = time_limit;
    o.use_vi1 = method == "bbm-vi1";
    o.use_vi2 = method == "bbm-vi2" || method == "bbm-bc";
    BendersResult r = method == "bbm-bc" ? solve_branch_and_cut(inst, o) : solve_iterative(inst, o);
    run.status = r.state.status;
    run.has_solution = true;  // the zero decision is always available
    run.solution = r.solution;
    run.objective = r.state.best_value;
    run.bound = r.state.bound;
    run.iterations = r.state.iteration;
    run.nodes = r.state.nodes;
    run.cuts = static_cast<long>(r.state.cuts.size());
    run.benders = std::move(r.state);
  }
  run.gap = run.has_solution ? gap_of(run.bound, run.objective) : kInf;
  if (run.status == SolveStatus::Optimal || run.status == SolveStatus::GapLimit)
    run.gap = std::min(run.gap, gap_of(std::max(run.bound, run.objective), run.objective));
  fill_recourse(inst, &run);
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

nlohmann::json solution_to_json(const ProductionInstance& inst, const MethodRun& run) {
  nlohmann::json j;
  j["format_version"] = kSolutionFormatVersion;
  j["method"] = run.method;
  j["status"] = to_string(run.status);
  j["objective"] = run.has_solution ? nlohmann::json(run.objective) : nlohmann::json(nullptr);
  j["bound"] = finite_or_null(run.bound);
  j["gap"] = finite_or_null(run.gap);
  j["products"] = inst.products;
  j["facilities"] = inst.facilities;
  if (run.has_solution) {
    j["x"] = run.solution.x;
    j["levels"] = run.solution.y;
    j["distributions"] = run.distributions;
    j["expected_revenue"] = run.expected_revenue;
  } else {
    j["x"] = nullptr;
    j["levels"] = nullptr;
    j["distributions"] = nullptr;
    j["expected_revenue"] = nullptr;
  }
  j["statistics"] = {{"iterations", run.iterations}, {"nodes", run.nodes}, {"cuts", run.cuts}};
  return j;
}

}  // namespace yieldplan::cli
