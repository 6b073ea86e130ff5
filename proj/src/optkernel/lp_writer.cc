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
#include <ostream>
#include <string>

#include "yieldplan/optkernel.h"

namespace yieldplan {
namespace {

std::string var_name(const LinearModel& m, int j) {
  const auto& n = m.variable(j).name;
  return n.empty() ? "v" + std::to_string(j) : n;
}

void write_term(std::ostream& out, double c, const std::string& name, bool first) {
  if (c < 0) {
    out << (first ? "-" : " - ");
    c = -c;
  } else if (!first) {
    out << " + ";
  }
  if (c != 1.0) out << c << ' ';
  out << name;
}

void write_bound(std::ostream& out, double v) {
  if (v == kInf) out << "+inf";
  else if (v == -kInf) out << "-inf";
  else out << v;
}

}  // namespace

void write_lp_text(const LinearModel& model, std::ostream& out) {
  const auto prec = out.precision(17);
  out << "Maximize\n obj:";
  bool first = true;
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    const double c = model.variable(static_cast<int>(j)).objective;
    if (c == 0.0) continue;
    if (first) out << ' ';
    write_term(out, c, var_name(model, static_cast<int>(j)), first);
    first = false;
  }
  if (first) out << " 0";
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < model.num_rows(); ++i) {
    const auto& r = model.rows()[i];
    out << ' ' << (r.name.empty() ? "r" + std::to_string(i) : r.name) << ':';
    bool f = true;
    for (const auto& [j, c] : r.coefs) {
      if (f) out << ' ';
      write_term(out, c, var_name(model, j), f);
      f = false;
    }
    if (f) out << " 0";
    out << (r.sense == RowSense::LessEqual ? " <= " : r.sense == RowSense::Equal ? " = " : " >= ")
        << r.rhs << '\n';
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    const auto& v = model.variable(static_cast<int>(j));
    const std::string name = var_name(model, static_cast<int>(j));
    if (v.lower == -kInf && v.upper == kInf) {
      out << ' ' << name << " free\n";
    } else {
      out << ' ';
      write_bound(out, v.lower);
      out << " <= " << name << " <= ";
      write_bound(out, v.upper);
      out << '\n';
    }
  }
  if (model.num_binaries() > 0) {
    out << "Binaries\n";
    for (std::size_t j = 0; j < model.num_variables(); ++j)
      if (model.variable(static_cast<int>(j)).type == VarType::Binary)
        out << ' ' << var_name(model, static_cast<int>(j)) << '\n';
  }
  out << "End\n";
  out.precision(prec);
}

}  // namespace yieldplan
