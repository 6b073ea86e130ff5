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

#ifndef YIELDPLAN_OPTKERNEL_H_
#define YIELDPLAN_OPTKERNEL_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace yieldplan {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarType : std::uint8_t { Continuous, Binary };
enum class RowSense : std::uint8_t { LessEqual, Equal, GreaterEqual };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  double objective = 0.0;
  VarType type = VarType::Continuous;
};

struct Row {
  std::string name;
  std::vector<std::pair<int, double>> coefs;
  RowSense sense = RowSense::LessEqual;
  double rhs = 0.0;
};

// A maximization problem over bounded variables and sparse linear rows.
class LinearModel {
 public:
  int add_variable(Variable v);
  int add_variable(std::string name, double lower, double upper,
                   double objective, VarType type = VarType::Continuous);
  int add_row(Row r);

  std::size_t num_variables() const { return vars_.size(); }
  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_binaries() const;

  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Row>& rows() const { return rows_; }
  Variable& variable(int j) { return vars_.at(j); }
  const Variable& variable(int j) const { return vars_.at(j); }

  double objective_value(const std::vector<double>& x) const;
  double row_activity(std::size_t i, const std::vector<double>& x) const;

  // Throws ModelError on unknown variable ids, NaN data, inverted bounds or
  // binaries with bounds outside [0, 1].
  void validate() const;

 private:
  std::vector<Variable> vars_;
  std::vector<Row> rows_;
};

enum class SolveStatus : std::uint8_t {
  Optimal,
  Infeasible,
  Unbounded,
  TimeLimit,
  GapLimit,
};

const char* to_string(SolveStatus s);

struct SolveStats {
  long iterations = 0;
  long nodes = 0;
  long cuts_added = 0;
  double wall_seconds = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::TimeLimit;
  std::vector<double> x;        // primal values (empty if none found)
  double objective = -kInf;     // of x, or -inf without a solution
  double bound = kInf;          // best proven upper bound
  std::vector<double> duals;    // LP: row multipliers y
  std::vector<double> reduced_costs;  // LP: c - A^T y per variable
  std::vector<double> farkas;   // LP Infeasible: row multipliers
  std::vector<double> ray;      // LP Unbounded: improving direction in x
  std::vector<double> bound_trace;      // MIP: global bound per node
  std::vector<double> incumbent_trace;  // MIP: incumbent per node
  SolveStats stats;
  bool has_solution() const { return !x.empty(); }
};

using Clock = std::chrono::steady_clock;

struct LpOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-7;
  int refactor_interval = 100;
  long degenerate_switch = 5000;  // consecutive degenerate pivots before Bland
  std::optional<Clock::time_point> deadline;
};

// Status of one column of [A | -I] in a simplex basis.
enum class BasisStatus : std::uint8_t { Basic, AtLower, AtUpper, AtZero };

struct Basis {
  std::vector<BasisStatus> columns;  // structurals
  std::vector<BasisStatus> rows;     // row activities
  bool empty() const { return columns.empty(); }
};

// Bounded-variable primal simplex holding its model, bounds and basis so
// it can be re-solved after bound changes or added rows.
class LpSolver {
 public:
  explicit LpSolver(const LinearModel& model, LpOptions options = {});
  ~LpSolver();
  LpSolver(LpSolver&&) noexcept;
  LpSolver& operator=(LpSolver&&) noexcept;

  void set_bounds(int j, double lower, double upper);
  std::pair<double, double> bounds(int j) const;
  void add_row(const Row& row);
  void set_deadline(std::optional<Clock::time_point> deadline);

  Basis basis() const;
  void set_basis(const Basis& basis);

  SolveResult solve();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SolveResult solve_lp(const LinearModel& model, const LpOptions& options = {});

// Returns rows to add when the integer-feasible point must be rejected.
using IncumbentCallback =
    std::function<std::vector<Row>(const std::vector<double>& x)>;

struct MipOptions {
  double time_limit = kInf;  // seconds
  double rel_gap = 1e-6;
  double integrality_tol = 1e-6;
  double feasibility_tol = 1e-7;
  IncumbentCallback callback;
  std::optional<std::vector<double>> initial_incumbent;
  bool record_trace = false;
};

// Best-bound branch and bound over the binary variables.
SolveResult solve_mip(const LinearModel& model, const MipOptions& options = {});

// Independent verification of an LP result.
struct CertificateCheck {
  bool ok = false;
  double primal_residual = 0.0;  // max row residual per unit row norm
  double bound_violation = 0.0;
  double dual_infeasibility = 0.0;
  double duality_gap = 0.0;      // |primal - dual| / (1 + |primal|)
  double dual_objective = kInf;
  std::string detail;
};

// Optimal: primal/dual feasibility within feas_tol and relative duality
// gap within gap_tol. Infeasible: the Farkas multipliers separate. Unbounded:
// the ray is a recession direction with positive objective slope.
CertificateCheck check_lp_certificate(const LinearModel& model,
                                      const SolveResult& result,
                                      double feas_tol = 1e-7,
                                      double gap_tol = 1e-6);

// Writes the model in LP text form:
//   Maximize
//    obj: 3 x1 + 2 x2
//   Subject To
//    c1: x1 + x2 <= 4
//   Bounds
//    0 <= x1 <= 10
//    x2 free
//   Binaries
//    y1
//   End
// Variables without names are written as v<index>, rows as r<index>.
void write_lp_text(const LinearModel& model, std::ostream& out);

}  // namespace yieldplan

#endif  // YIELDPLAN_OPTKERNEL_H_
