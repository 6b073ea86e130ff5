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
#include <string>

#include "yieldplan/optkernel.h"

namespace yieldplan {
namespace {

struct RowRange {
  double lo, hi;
};

RowRange range_of(const Row& r) {
  switch (r.sense) {
    case RowSense::LessEqual: return {-kInf, r.rhs};
    case RowSense::GreaterEqual: return {r.rhs, kInf};
    case RowSense::Equal: return {r.rhs, r.rhs};
  }
  return {-kInf, kInf};
}

double row_norm(const Row& r) {
  double m = 0.0;
  for (const auto& [j, c] : r.coefs) m = std::max(m, std::abs(c));
  return m > 0.0 ? m : 1.0;
}

// max over v in [lo, hi] of coef * v; coefficients within `zero` of 0 are
// treated as 0 so roundoff does not turn a finite bound infinite.
double box_max(double coef, double lo, double hi, double zero) {
  if (std::abs(coef) <= zero) return 0.0;
  return coef > 0 ? coef * hi : coef * lo;
}

void primal_check(const LinearModel& m, const std::vector<double>& x, double tol,
                  CertificateCheck* out) {
  for (std::size_t i = 0; i < m.num_rows(); ++i) {
    const Row& r = m.rows()[i];
    const double s = row_norm(r);
    const RowRange rr = range_of(r);
    const double a = m.row_activity(i, x);
    const double viol = std::max({0.0, rr.lo - a, a - rr.hi}) / s;
    out->primal_residual = std::max(out->primal_residual, viol / (1.0 + std::abs(r.rhs) / s));
  }
  for (std::size_t j = 0; j < m.num_variables(); ++j) {
    const auto& v = m.variable(static_cast<int>(j));
    const double below = v.lower - x[j], above = x[j] - v.upper;
    if (below > 0) out->bound_violation = std::max(out->bound_violation, below / (1.0 + std::abs(v.lower)));
    if (above > 0) out->bound_violation = std::max(out->bound_violation, above / (1.0 + std::abs(v.upper)));
  }
  (void)tol;
}

}  // namespace

CertificateCheck check_lp_certificate(const LinearModel& model,
                                      const SolveResult& result, double feas_tol,
                                      double gap_tol) {
  CertificateCheck out;
  const std::size_t n = model.num_variables(), m = model.num_rows();

  if (result.status == SolveStatus::Optimal) {
    if (result.x.size() != n || result.duals.size() != m) {
      out.detail = "missing primal or dual vectors";
      return out;
    }
    primal_check(model, result.x, feas_tol, &out);
    double cmax = 0.0;
    for (const auto& v : model.variables()) cmax = std::max(cmax, std::abs(v.objective));
    const double dtol = feas_tol * (1.0 + cmax);

    std::vector<double> d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = model.variable(static_cast<int>(j)).objective;
    for (std::size_t i = 0; i < m; ++i)
      for (const auto& [j, c] : model.rows()[i].coefs) d[j] -= result.duals[i] * c;

    double dual_obj = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& v = model.variable(static_cast<int>(j));
      if (v.upper == kInf && d[j] > 0) out.dual_infeasibility = std::max(out.dual_infeasibility, d[j] / (1.0 + cmax));
      if (v.lower == -kInf && d[j] < 0) out.dual_infeasibility = std::max(out.dual_infeasibility, -d[j] / (1.0 + cmax));
      dual_obj += box_max(d[j], v.lower, v.upper, dtol);
    }
    for (std::size_t i = 0; i < m; ++i) {
      const RowRange rr = range_of(model.rows()[i]);
      const double y = result.duals[i];
      const double ytol = dtol / row_norm(model.rows()[i]);
      if (rr.hi == kInf && y > 0) out.dual_infeasibility = std::max(out.dual_infeasibility, y / (1.0 + cmax));
      if (rr.lo == -kInf && y < 0) out.dual_infeasibility = std::max(out.dual_infeasibility, -y / (1.0 + cmax));
      // The row term of the Lagrangian is + y * r with r in [lo, hi].
      dual_obj += box_max(y, rr.lo, rr.hi, ytol);
    }
    out.dual_objective = dual_obj;
    const double primal = model.objective_value(result.x);
    out.duality_gap = std::isfinite(dual_obj) ? std::abs(primal - dual_obj) / (1.0 + std::abs(primal)) : kInf;
    out.ok = out.primal_residual <= feas_tol && out.bound_violation <= feas_tol &&
             out.dual_infeasibility <= feas_tol && out.duality_gap <= gap_tol;
    if (!out.ok) out.detail = "optimality certificate failed";
    return out;
  }

  if (result.status == SolveStatus::Infeasible) {
    if (result.farkas.size() != m) {
      out.detail = "missing Farkas multipliers";
      return out;
    }
    // h(v) = y^T A x - y^T r must vanish on feasible points; show max h < 0.
    std::vector<double> col(n, 0.0);
    double ynorm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      ynorm = std::max(ynorm, std::abs(result.farkas[i]) * row_norm(model.rows()[i]));
      for (const auto& [j, c] : model.rows()[i].coefs) col[j] += result.farkas[i] * c;
    }
    if (ynorm == 0.0) {
      out.detail = "zero Farkas vector";
      return out;
    }
    const double zero = 1e-9 * ynorm;
    double hmax = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& v = model.variable(static_cast<int>(j));
      const double t = box_max(col[j], v.lower, v.upper, zero);
      hmax += t;
      scale += std::abs(t);
    }
    for (std::size_t i = 0; i < m; ++i) {
      const RowRange rr = range_of(model.rows()[i]);
      const double t = box_max(-result.farkas[i], rr.lo, rr.hi, zero / row_norm(model.rows()[i]));
      hmax += t;
      scale += std::abs(t);
    }
    out.dual_objective = hmax;
    out.ok = hmax < -feas_tol * (1.0 + scale);
    if (!out.ok) out.detail = "Farkas vector does not separate";
    return out;
  }

  if (result.status == SolveStatus::Unbounded) {
    if (result.ray.size() != n || result.x.size() != n) {
      out.detail = "missing ray or feasible point";
      return out;
    }
    primal_check(model, result.x, feas_tol, &out);
    double rnorm = 0.0;
    for (double r : result.ray) rnorm = std::max(rnorm, std::abs(r));
    if (rnorm == 0.0) {
      out.detail = "zero ray";
      return out;
    }
    bool ok = out.primal_residual <= feas_tol && out.bound_violation <= feas_tol;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& v = model.variable(static_cast<int>(j));
      const double r = result.ray[j] / rnorm;
      if ((r > feas_tol && v.upper != kInf) || (r < -feas_tol && v.lower != -kInf)) ok = false;
    }
    for (std::size_t i = 0; i < m; ++i) {
      const Row& row = model.rows()[i];
      const RowRange rr = range_of(row);
      double a = 0.0;
      for (const auto& [j, c] : row.coefs) a += c * result.ray[j] / rnorm;
      a /= row_norm(row);
      if ((a > feas_tol && rr.hi != kInf) || (a < -feas_tol && rr.lo != -kInf)) ok = false;
    }
    double slope = 0.0;
    for (std::size_t j = 0; j < n; ++j) slope += model.variable(static_cast<int>(j)).objective * result.ray[j] / rnorm;
    out.ok = ok && slope > feas_tol;
    if (!out.ok) out.detail = "ray is not an improving recession direction";
    return out;
  }

  out.detail = std::string("no certificate for status ") + to_string(result.status);
  return out;
}

}  // namespace yieldplan
