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

#include <cmath>
#include <string>

#include "yieldplan/errors.h"
#include "yieldplan/optkernel.h"

namespace yieldplan {

int LinearModel::add_variable(Variable v) {
  vars_.push_back(std::move(v));
  return static_cast<int>(vars_.size()) - 1;
}

int LinearModel::add_variable(std::string name, double lower, double upper,
                              double objective, VarType type) {
  return add_variable(Variable{std::move(name), lower, upper, objective, type});
}

int LinearModel::add_row(Row r) {
  rows_.push_back(std::move(r));
  return static_cast<int>(rows_.size()) - 1;
}

std::size_t LinearModel::num_binaries() const {
  std::size_t n = 0;
  for (const auto& v : vars_) n += v.type == VarType::Binary;
  return n;
}

double LinearModel::objective_value(const std::vector<double>& x) const {
  double v = 0.0;
  for (std::size_t j = 0; j < vars_.size(); ++j) v += vars_[j].objective * x[j];
  return v;
}

double LinearModel::row_activity(std::size_t i, const std::vector<double>& x) const {
  double a = 0.0;
  for (const auto& [j, c] : rows_[i].coefs) a += c * x[j];
  return a;
}

void LinearModel::validate() const {
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    const auto& v = vars_[j];
    const std::string who = "variable " + (v.name.empty() ? std::to_string(j) : v.name);
    if (std::isnan(v.lower) || std::isnan(v.upper) || !std::isfinite(v.objective))
      throw ModelError(who + " has NaN or infinite data");
    if (v.lower > v.upper) throw ModelError(who + " has lower > upper");
    if (v.lower == kInf || v.upper == -kInf) throw ModelError(who + " has an empty domain");
    if (v.type == VarType::Binary && (v.lower < 0.0 || v.upper > 1.0))
      throw ModelError(who + " is binary with bounds outside [0,1]");
  }
  const int n = static_cast<int>(vars_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    const std::string who = "row " + (r.name.empty() ? std::to_string(i) : r.name);
    if (!std::isfinite(r.rhs)) throw ModelError(who + " has a non-finite right-hand side");
    for (const auto& [j, c] : r.coefs) {
      if (j < 0 || j >= n) throw ModelError(who + " references unknown variable " + std::to_string(j));
      if (!std::isfinite(c)) throw ModelError(who + " has a non-finite coefficient");
    }
  }
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::TimeLimit: return "TimeLimit";
    case SolveStatus::GapLimit: return "GapLimit";
  }
  return "Unknown";
}

}  // namespace yieldplan
