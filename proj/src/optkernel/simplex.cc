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

// Bounded-variable primal simplex on  A x - r = 0,  l <= x <= u,  rl <= r <= ru.
// Columns are scaled by powers of two so that their largest row-scaled
// coefficient is near one, then rows by the inverse of their largest
// coefficient; solver values are internal and unscaled on output. The basis
// inverse is kept dense and updated in product form, with a full refactor
// every `refactor_interval` pivots.
#include <algorithm>
#include <cmath>
#include <utility>

#include "yieldplan/errors.h"
#include "yieldplan/optkernel.h"
#include "yieldplan/simd/kernels.h"

namespace yieldplan {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kSingularTol = 1e-11;

// Dense k x k inverse by Gauss-Jordan with partial pivoting. Input and
// output are column-major; the elimination runs on row-major copies and
// only touches the nonzeros of each pivot row, which keeps sparse bases cheap.
bool invert_dense(const std::vector<double>& a, std::size_t k, std::vector<double>* inv,
                  std::vector<double>& m, std::vector<double>& e) {
  m.resize(k * k);
  e.assign(k * k, 0.0);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < k; ++r) m[r * k + c] = a[c * k + r];
  for (std::size_t i = 0; i < k; ++i) e[i * k + i] = 1.0;
  std::vector<std::size_t> nz_m, nz_e;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    double best = std::abs(m[c * k + c]);
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(m[r * k + c]) > best) best = std::abs(m[r * k + c]), piv = r;
    if (best < kSingularTol) return false;
    if (piv != c) {
      std::swap_ranges(m.begin() + c * k, m.begin() + (c + 1) * k, m.begin() + piv * k);
      std::swap_ranges(e.begin() + c * k, e.begin() + (c + 1) * k, e.begin() + piv * k);
    }
    double* mc = &m[c * k];
    double* ec = &e[c * k];
    const double d = 1.0 / mc[c];
    nz_m.clear();
    nz_e.clear();
    for (std::size_t j = c; j < k; ++j)
      if (mc[j] != 0.0) mc[j] *= d, nz_m.push_back(j);
    for (std::size_t j = 0; j < k; ++j)
      if (ec[j] != 0.0) ec[j] *= d, nz_e.push_back(j);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      double* mr = &m[r * k];
      const double f = mr[c];
      if (f == 0.0) continue;
      double* er = &e[r * k];
      for (std::size_t j : nz_m) mr[j] -= f * mc[j];
      for (std::size_t j : nz_e) er[j] -= f * ec[j];
      mr[c] = 0.0;
    }
  }
  inv->resize(k * k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) (*inv)[c * k + r] = e[r * k + c];
  return true;
}

}  // namespace

struct LpSolver::Impl {
  using Entry = std::pair<int, double>;

  LpOptions opt;
  int n = 0;  // structurals
  int m = 0;  // rows
  std::vector<std::vector<Entry>> cols;  // scaled structural columns
  std::vector<double> scale;             // row scale s_i
  std::vector<double> cscale;            // column scale: x_j = cscale_j * internal x_j
  std::vector<double> lo, hi;            // n + m, slack bounds scaled
  std::vector<double> obj;               // structural objective (max), column-scaled
  std::vector<BasisStatus> status;       // n + m
  std::vector<double> xval;              // nonbasic values
  std::vector<int> head;                 // basis position -> column
  std::vector<int> pos;                  // column -> basis position or -1
  std::vector<double> binv;              // m x m column-major
  std::vector<double> xb;                // basic values by position
  bool factor_valid = false;
  bool xb_valid = false;
  int since_refactor = 0;
  double cmax = 0.0;
  const simd::KernelTable* k = &simd::active_kernels();
  std::vector<double> scratch[4];  // refactor work arrays, kept to avoid reallocation

  void init(const LinearModel& model) {
    model.validate();
    n = static_cast<int>(model.num_variables());
    cols.assign(n, {});
    std::vector<double> colmax(n, 0.0);
    for (const Row& r : model.rows()) {
      double rmax = 0.0;
      for (const auto& [j, c] : r.coefs) rmax = std::max(rmax, std::abs(c));
      if (rmax == 0.0) continue;
      for (const auto& [j, c] : r.coefs)
        if (j >= 0 && j < n) colmax[j] = std::max(colmax[j], std::abs(c) / rmax);
    }
    cscale.assign(n, 1.0);
    for (int j = 0; j < n; ++j)
      if (colmax[j] > 0.0) cscale[j] = std::exp2(-std::round(std::log2(colmax[j])));
    obj.resize(n);
    lo.resize(n);
    hi.resize(n);
    for (int j = 0; j < n; ++j) {
      const auto& v = model.variable(j);
      lo[j] = v.lower / cscale[j];
      hi[j] = v.upper / cscale[j];
      obj[j] = v.objective * cscale[j];
      cmax = std::max(cmax, std::abs(v.objective));
    }
    status.assign(n, BasisStatus::AtLower);
    xval.assign(n, 0.0);
    for (int j = 0; j < n; ++j) place_nonbasic(j, BasisStatus::AtLower);
    for (const Row& r : model.rows()) append_row(r);
  }

  void append_row(const Row& r) {
    double s = 0.0;
    for (const auto& [j, c] : r.coefs) {
      if (j < 0 || j >= n) throw ModelError("row references unknown variable");
      s = std::max(s, std::abs(c * cscale[j]));
    }
    s = s > 0.0 ? 1.0 / s : 1.0;
    const int i = m++;
    for (const auto& [j, c] : r.coefs)
      if (c != 0.0) cols[j].push_back({i, c * cscale[j] * s});
    scale.push_back(s);
    double rl = -kInf, ru = kInf;
    if (r.sense != RowSense::LessEqual) rl = r.rhs * s;
    if (r.sense != RowSense::GreaterEqual) ru = r.rhs * s;
    lo.push_back(rl);
    hi.push_back(ru);
    status.push_back(BasisStatus::Basic);
    xval.push_back(0.0);
    head.push_back(n + i);
    pos.resize(n + m, -1);
    // Existing structural positions are unchanged; slack columns shift.
    rebuild_pos();
    factor_valid = false;
    xb_valid = false;
  }

  void rebuild_pos() {
    pos.assign(n + m, -1);
    for (int p = 0; p < static_cast<int>(head.size()); ++p) pos[head[p]] = p;
  }

  // Puts column j at the bound named by `pref` if finite, otherwise the
  // other finite bound, otherwise zero.
  void place_nonbasic(int j, BasisStatus pref) {
    const bool lf = lo[j] > -kInf, uf = hi[j] < kInf;
    BasisStatus s;
    if (pref == BasisStatus::AtUpper && uf) s = BasisStatus::AtUpper;
    else if (lf) s = BasisStatus::AtLower;
    else if (uf) s = BasisStatus::AtUpper;
    else s = BasisStatus::AtZero;
    status[j] = s;
    xval[j] = s == BasisStatus::AtLower ? lo[j] : s == BasisStatus::AtUpper ? hi[j] : 0.0;
  }

  void slack_basis() {
    head.clear();
    for (int j = 0; j < n; ++j) {
      const BasisStatus s = status[j] == BasisStatus::Basic ? BasisStatus::AtLower : status[j];
      place_nonbasic(j, s);
    }
    for (int i = 0; i < m; ++i) {
      status[n + i] = BasisStatus::Basic;
      head.push_back(n + i);
    }
    rebuild_pos();
    factor_valid = false;
    xb_valid = false;
  }

  // Column j of [A | -I] applied as y += alpha * a_j.
  void add_column(int j, double alpha, double* y) const {
    if (j < n) {
      for (const auto& [i, c] : cols[j]) y[i] += alpha * c;
    } else {
      y[j - n] -= alpha;
    }
  }

  bool refactor() {
    since_refactor = 0;
    std::vector<int> structs;
    std::vector<char> slack_basic(m, 0);
    for (int p = 0; p < m; ++p) {
      if (head[p] < n) structs.push_back(p);
      else slack_basic[head[p] - n] = 1;
    }
    std::vector<int> trow;  // rows without a basic slack
    std::vector<int> tindex(m, -1);
    for (int i = 0; i < m; ++i)
      if (!slack_basic[i]) tindex[i] = static_cast<int>(trow.size()), trow.push_back(i);
    const std::size_t kk = structs.size();
    if (trow.size() != kk) return false;
    // Sparse columns first limits fill-in during elimination.
    std::vector<int> count(m, 0);
    for (int p : structs)
      for (const auto& [i, v] : cols[head[p]]) count[p] += tindex[i] >= 0;
    std::stable_sort(structs.begin(), structs.end(), [&](int a, int b) { return count[a] < count[b]; });
    std::vector<double>& dense = scratch[0];
    std::vector<double>& inv = scratch[1];
    dense.assign(kk * kk, 0.0);
    for (std::size_t c = 0; c < kk; ++c)
      for (const auto& [i, v] : cols[head[structs[c]]])
        if (tindex[i] >= 0) dense[c * kk + tindex[i]] = v;
    if (!invert_dense(dense, kk, &inv, scratch[2], scratch[3])) return false;
    binv.assign(static_cast<std::size_t>(m) * m, 0.0);
    auto B = [&](int row, int col) -> double& { return binv[static_cast<std::size_t>(col) * m + row]; };
    for (std::size_t c = 0; c < kk; ++c)
      for (std::size_t t = 0; t < kk; ++t) B(structs[c], trow[t]) = inv[t * kk + c];
    for (int i = 0; i < m; ++i)
      if (slack_basic[i]) B(pos[n + i], i) = -1.0;
    // Slack rows: v_slack_i = sum_c a_ic v_struct_c for unit right-hand sides in T.
    for (std::size_t c = 0; c < kk; ++c) {
      for (const auto& [i, v] : cols[head[structs[c]]]) {
        if (!slack_basic[i]) continue;
        const int prow = pos[n + i];
        for (std::size_t t = 0; t < kk; ++t) B(prow, trow[t]) += v * inv[t * kk + c];
      }
    }
    factor_valid = true;
    return true;
  }

  void ensure_factor() {
    if (factor_valid) return;
    if (refactor()) return;
    slack_basis();
    if (!refactor()) throw ModelError("slack basis failed to factor");
  }

  void compute_xb() {
    std::vector<double> rhs(m, 0.0);
    for (int j = 0; j < n + m; ++j)
      if (status[j] != BasisStatus::Basic && xval[j] != 0.0) add_column(j, -xval[j], rhs.data());
    xb.assign(m, 0.0);
    for (int i = 0; i < m; ++i)
      if (rhs[i] != 0.0) k->axpy(rhs[i], &binv[static_cast<std::size_t>(i) * m], xb.data(), m);
    xb_valid = true;
  }

  void ftran(int q, std::vector<double>* alpha) const {
    alpha->assign(m, 0.0);
    if (q < n) {
      for (const auto& [i, c] : cols[q]) k->axpy(c, &binv[static_cast<std::size_t>(i) * m], alpha->data(), m);
    } else {
      k->axpy(-1.0, &binv[static_cast<std::size_t>(q - n) * m], alpha->data(), m);
    }
  }

  void btran(const std::vector<double>& gb, std::vector<double>* pi) const {
    pi->assign(m, 0.0);
    std::vector<int> nz;
    for (int p = 0; p < m; ++p)
      if (gb[p] != 0.0) nz.push_back(p);
    if (nz.empty()) return;
    if (nz.size() * 4 >= static_cast<std::size_t>(m)) {
      for (int i = 0; i < m; ++i) (*pi)[i] = k->dot(gb.data(), &binv[static_cast<std::size_t>(i) * m], m);
      return;
    }
    for (int i = 0; i < m; ++i) {
      const double* col = &binv[static_cast<std::size_t>(i) * m];
      double s = 0.0;
      for (int p : nz) s += gb[p] * col[p];
      (*pi)[i] = s;
    }
  }

  void pivot_update(const std::vector<double>& alpha, int r) {
    const double ar = alpha[r];
    for (int c = 0; c < m; ++c) {
      double* col = &binv[static_cast<std::size_t>(c) * m];
      const double v = col[r];
      if (v == 0.0) continue;
      const double t = v / ar;
      k->axpy(-t, alpha.data(), col, m);
      col[r] = t;
    }
  }

  double ptol(double bound) const { return 0.5 * opt.feasibility_tol * (1.0 + std::abs(bound)); }

  double dtol(int j) const {
    const double base = opt.optimality_tol * (1.0 + cmax) * 0.5;
    return j < n ? base : base / std::max(1.0, scale[j - n]);
  }

  // Internal minimization cost of column j in phase 2.
  double cost(int j) const { return j < n ? -obj[j] : 0.0; }

  double column_dot(int j, const std::vector<double>& pi) const {
    if (j >= n) return -pi[j - n];
    double s = 0.0;
    for (const auto& [i, c] : cols[j]) s += pi[i] * c;
    return s;
  }

  SolveResult run();
  void fill_optimal(const std::vector<double>& pi, SolveResult* res) const;
  std::vector<double> structural_x() const {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = cscale[j] * (status[j] == BasisStatus::Basic ? xb[pos[j]] : xval[j]);
    return x;
  }
};

void LpSolver::Impl::fill_optimal(const std::vector<double>& pi, SolveResult* res) const {
  res->x = structural_x();
  res->objective = 0.0;
  for (int j = 0; j < n; ++j) res->objective += obj[j] / cscale[j] * res->x[j];
  res->bound = res->objective;
  res->duals.resize(m);
  for (int i = 0; i < m; ++i) res->duals[i] = -scale[i] * pi[i];
  res->reduced_costs.assign(obj.begin(), obj.end());
  for (int j = 0; j < n; ++j) {
    for (const auto& [i, c] : cols[j]) res->reduced_costs[j] -= res->duals[i] * (c / scale[i]);
    res->reduced_costs[j] /= cscale[j];
  }
}

SolveResult LpSolver::Impl::run() {
  const auto t0 = Clock::now();
  SolveResult res;
  ensure_factor();
  if (!xb_valid) compute_xb();

  const long max_iter = 200000 + 200L * (n + m);
  long degenerate = 0;
  bool verified = since_refactor == 0;
  std::vector<double> gb(m), pi, alpha, lb(m), ub(m);

  for (long it = 0;; ++it) {
    if (opt.deadline && Clock::now() > *opt.deadline) {
      res.status = SolveStatus::TimeLimit;
      break;
    }
    if (it >= max_iter) {
      res.status = SolveStatus::TimeLimit;
      break;
    }
    if (since_refactor >= opt.refactor_interval) {
      if (!refactor()) {
        slack_basis();
        ensure_factor();
      }
      compute_xb();
      verified = true;
    }

    // Phase selection and phase-adjusted bounds of the basic variables.
    bool phase1 = false;
    for (int p = 0; p < m; ++p) {
      const int j = head[p];
      lb[p] = lo[j];
      ub[p] = hi[j];
      gb[p] = 0.0;
      if (xb[p] < lo[j] - ptol(lo[j])) {
        gb[p] = -1.0;
        lb[p] = -kInf;
        ub[p] = lo[j];
        phase1 = true;
      } else if (xb[p] > hi[j] + ptol(hi[j])) {
        gb[p] = 1.0;
        lb[p] = hi[j];
        ub[p] = kInf;
        phase1 = true;
      }
    }
    if (!phase1)
      for (int p = 0; p < m; ++p) gb[p] = cost(head[p]);
    btran(gb, &pi);

    // Pricing: Dantzig, or Bland after a long degenerate stall.
    const bool bland = degenerate >= opt.degenerate_switch;
    int q = -1;
    int dir = 0;
    double best = 0.0;
    for (int j = 0; j < n + m; ++j) {
      const BasisStatus s = status[j];
      if (s == BasisStatus::Basic || lo[j] == hi[j]) continue;
      const double d = (phase1 ? 0.0 : cost(j)) - column_dot(j, pi);
      const double tol = phase1 ? 1e-9 : dtol(j);
      int dj = 0;
      if ((s == BasisStatus::AtLower || s == BasisStatus::AtZero) && d < -tol) dj = 1;
      else if ((s == BasisStatus::AtUpper || s == BasisStatus::AtZero) && d > tol) dj = -1;
      if (dj == 0) continue;
      if (bland) {
        q = j;
        dir = dj;
        break;
      }
      if (std::abs(d) > best) best = std::abs(d), q = j, dir = dj;
    }

    if (q < 0) {
      if (!verified) {
        if (!refactor()) {
          slack_basis();
          ensure_factor();
        }
        compute_xb();
        verified = true;
        continue;
      }
      if (phase1) {
        res.status = SolveStatus::Infeasible;
        res.farkas.resize(m);
        for (int i = 0; i < m; ++i) res.farkas[i] = scale[i] * pi[i];
      } else {
        res.status = SolveStatus::Optimal;
        fill_optimal(pi, &res);
      }
      break;
    }

    ftran(q, &alpha);

    // Harris two-pass ratio test.
    double theta_max = kInf;
    for (int p = 0; p < m; ++p) {
      const double rate = -dir * alpha[p];
      if (std::abs(alpha[p]) <= kPivotTol) continue;
      if (rate < 0 && lb[p] > -kInf) theta_max = std::min(theta_max, (xb[p] - lb[p] + ptol(lb[p])) / -rate);
      else if (rate > 0 && ub[p] < kInf) theta_max = std::min(theta_max, (ub[p] - xb[p] + ptol(ub[p])) / rate);
    }
    int r = -1;
    double theta = kInf, rbest = 0.0;
    for (int p = 0; p < m; ++p) {
      const double rate = -dir * alpha[p];
      if (std::abs(alpha[p]) <= kPivotTol) continue;
      double ratio;
      if (rate < 0 && lb[p] > -kInf) ratio = (xb[p] - lb[p]) / -rate;
      else if (rate > 0 && ub[p] < kInf) ratio = (ub[p] - xb[p]) / rate;
      else continue;
      ratio = std::max(ratio, 0.0);
      if (bland) {
        if (ratio < theta || (ratio == theta && head[p] < head[r])) theta = ratio, r = p;
      } else if (ratio <= theta_max && std::abs(alpha[p]) > rbest) {
        rbest = std::abs(alpha[p]);
        theta = ratio;
        r = p;
      }
    }
    const double range = hi[q] - lo[q];
    const bool flip = range < kInf && (r < 0 || range <= theta);

    if (r < 0 && !flip) {
      if (phase1) {
        // Cannot happen in exact arithmetic; recover by refactoring.
        if (!refactor()) slack_basis();
        ensure_factor();
        compute_xb();
        verified = true;
        continue;
      }
      res.status = SolveStatus::Unbounded;
      res.x = structural_x();
      res.objective = kInf;
      res.ray.assign(n, 0.0);
      if (q < n) res.ray[q] = dir * cscale[q];
      for (int p = 0; p < m; ++p)
        if (head[p] < n) res.ray[head[p]] = -dir * alpha[p] * cscale[head[p]];
      break;
    }

    const double step = flip ? range : theta;
    if (step != 0.0) k->axpy(-dir * step, alpha.data(), xb.data(), m);
    degenerate = step <= 1e-12 ? degenerate + 1 : 0;
    ++res.stats.iterations;
    verified = false;

    if (flip) {
      status[q] = status[q] == BasisStatus::AtUpper ? BasisStatus::AtLower : BasisStatus::AtUpper;
      xval[q] = status[q] == BasisStatus::AtLower ? lo[q] : hi[q];
      continue;
    }

    const int leave = head[r];
    const double entering = xval[q] + dir * step;
    const double hit = -dir * alpha[r] < 0 ? lb[r] : ub[r];
    status[leave] = hit == lo[leave] ? BasisStatus::AtLower : BasisStatus::AtUpper;
    xval[leave] = hit;
    status[q] = BasisStatus::Basic;
    head[r] = q;
    pos[q] = r;
    pos[leave] = -1;
    pivot_update(alpha, r);
    xb[r] = entering;
    ++since_refactor;
  }
  res.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return res;
}

LpSolver::LpSolver(const LinearModel& model, LpOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->opt = options;
  impl_->init(model);
}

LpSolver::~LpSolver() = default;
LpSolver::LpSolver(LpSolver&&) noexcept = default;
LpSolver& LpSolver::operator=(LpSolver&&) noexcept = default;

void LpSolver::set_bounds(int j, double lower, double upper) {
  auto& s = *impl_;
  if (j < 0 || j >= s.n) throw ModelError("set_bounds: unknown variable");
  if (lower > upper) throw ModelError("set_bounds: lower > upper");
  lower /= s.cscale[j];
  upper /= s.cscale[j];
  if (s.lo[j] == lower && s.hi[j] == upper) return;
  s.lo[j] = lower;
  s.hi[j] = upper;
  if (s.status[j] != BasisStatus::Basic) {
    s.place_nonbasic(j, s.status[j]);
    s.xb_valid = false;
  }
}

std::pair<double, double> LpSolver::bounds(int j) const {
  const double c = impl_->cscale.at(j);
  return {impl_->lo[j] * c, impl_->hi[j] * c};
}

void LpSolver::add_row(const Row& row) {
  if (!std::isfinite(row.rhs)) throw ModelError("add_row: non-finite right-hand side");
  impl_->append_row(row);
}

void LpSolver::set_deadline(std::optional<Clock::time_point> deadline) { impl_->opt.deadline = deadline; }

Basis LpSolver::basis() const {
  const auto& s = *impl_;
  Basis b;
  b.columns.assign(s.status.begin(), s.status.begin() + s.n);
  b.rows.assign(s.status.begin() + s.n, s.status.end());
  return b;
}

void LpSolver::set_basis(const Basis& basis) {
  auto& s = *impl_;
  if (basis.columns.size() != static_cast<std::size_t>(s.n) || basis.rows.size() > static_cast<std::size_t>(s.m))
    throw ModelError("set_basis: basis does not match the model");
  std::vector<BasisStatus> st(basis.columns);
  st.insert(st.end(), basis.rows.begin(), basis.rows.end());
  st.resize(s.n + s.m, BasisStatus::Basic);
  long count = 0;
  bool same = true;
  for (int j = 0; j < s.n + s.m; ++j) {
    if (st[j] != BasisStatus::Basic) continue;
    ++count;
    same = same && s.status[j] == BasisStatus::Basic;
  }
  if (count != s.m) return;  // not a basis of this model; keep the current one
  if (!same) {
    s.head.clear();
    for (int j = 0; j < s.n + s.m; ++j)
      if (st[j] == BasisStatus::Basic) s.head.push_back(j);
    s.rebuild_pos();
    s.factor_valid = false;
  }
  for (int j = 0; j < s.n + s.m; ++j) {
    if (st[j] == BasisStatus::Basic) {
      s.status[j] = BasisStatus::Basic;
    } else {
      s.place_nonbasic(j, st[j]);
    }
  }
  s.xb_valid = false;
}

SolveResult LpSolver::solve() { return impl_->run(); }

SolveResult solve_lp(const LinearModel& model, const LpOptions& options) {
  LpSolver solver(model, options);
  return solver.solve();
}

}  // namespace yieldplan
