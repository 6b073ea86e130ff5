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

#ifndef YIELDPLAN_CLI_H_
#define YIELDPLAN_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "yieldplan/benders.h"
#include "yieldplan/generator.h"
#include "yieldplan/model.h"
#include "yieldplan/optkernel.h"
#include "yieldplan/secondstage.h"

namespace yieldplan::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitTimeLimit = 3,
  kExitOracleBudget = 4,
};

inline constexpr int kSolutionFormatVersion = 1;
inline constexpr int kCampaignFormatVersion = 1;

inline constexpr double kDefaultGap = 1e-4;
inline constexpr double kDefaultTimeLimit = 1800.0;
inline constexpr const char* kDefaultMethod = "bbm-vi2";

// extensive, bbm, bbm-vi1, bbm-vi2, bbm-bc, oracle
const std::vector<std::string>& method_names();
bool is_method(const std::string& name);

struct MethodRun {
  std::string method;
  SolveStatus status = SolveStatus::TimeLimit;
  bool has_solution = false;
  double objective = 0.0;
  double bound = kInf;
  double gap = kInf;
  long iterations = 0;  // Benders iterations, or simplex iterations
  long nodes = 0;
  long cuts = 0;
  double wall_seconds = 0.0;
  MasterSolution solution;
  std::vector<std::size_t> distributions;  // d(y_p)
  std::vector<double> expected_revenue;    // Q_p
  std::optional<BendersState> benders;
};

// `gap` is the optimality tolerance: epsilon for the Benders methods,
// relative MIP gap for the extensive form; the oracle ignores it.
// Throws ConfigError for unknown methods and OracleTooLargeError when the
// oracle would exceed its budget.
MethodRun run_method(const ProductionInstance& inst, const std::string& method,
                     double gap, double time_limit, int threads = 1);

// Solution file. Infinite bounds and gaps are written as null. Contains no
// timing so repeated runs produce identical files.
nlohmann::json solution_to_json(const ProductionInstance& inst,
                                const MethodRun& run);

// Benchmark campaign (TOML):
//   format_version = 1
//   methods = ["bbm", "bbm-vi2", "extensive"]
//   scenarios = [5, 10]
//   seeds = [1, 2, 3]          # or: seed_start = 1, seed_count = 3
//   time_limit = 10.0          # seconds per run
//   gap = 1e-4
//   workers = 1
//   [generator]                # optional GeneratorConfig overrides
//   demand_mean = 20000.0
//   [[classes]]
//   facilities = 2
//   products = 5
//   levels = 2
struct InstanceClass {
  int facilities = 2;
  int products = 5;
  int levels = 2;
};

struct Campaign {
  std::vector<InstanceClass> classes;
  std::vector<int> scenarios;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> methods;
  double time_limit = kDefaultTimeLimit;
  double gap = kDefaultGap;
  int workers = 1;
  GeneratorConfig base;  // overrides applied; shape fields are per run
};

// Throws ConfigError.
Campaign parse_campaign(const std::string& toml_text);
Campaign read_campaign(const std::filesystem::path& path);

struct BenchRow {
  InstanceClass cls;
  int scenarios = 0;
  std::uint64_t seed = 0;
  std::string method;
  std::string status;  // solve status, or "Error"
  double objective = 0.0;
  bool has_objective = false;
  double bound = kInf;
  double gap = kInf;
  long iterations = 0;
  long nodes = 0;
  long cuts = 0;
  double wall_seconds = 0.0;
  std::string error;

  bool solved() const { return status == "Optimal" || status == "GapLimit"; }
};

// Runs classes x scenarios x seeds x methods in that nesting order on
// `campaign.workers` threads. Rows come back in campaign order.
std::vector<BenchRow> run_campaign(const Campaign& campaign);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

struct BenchAggregate {
  std::string method;
  InstanceClass cls;
  int scenarios = 0;
  int runs = 0;
  int solved = 0;
  double mean_seconds = 0.0;  // over all runs, unsolved ones included

  double percent_solved() const { return runs ? 100.0 * solved / runs : 0.0; }
};

std::vector<BenchAggregate> aggregate(const std::vector<BenchRow>& rows);
void write_aggregate_csv(std::ostream& out,
                         const std::vector<BenchAggregate>& agg);
// Two tables (percent solved, mean seconds): one row per method, one
// column per class.
void print_summary(std::ostream& out, const std::vector<BenchAggregate>& agg);

// Entry point of the command-line tool.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace yieldplan::cli

#endif  // YIELDPLAN_CLI_H_
