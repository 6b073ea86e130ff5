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
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "instances.h"
#include "yieldplan/analysis.h"
#include "yieldplan/benders.h"
#include "yieldplan/generator.h"

using namespace yieldplan;
using doctest::Approx;

namespace {

MasterSolution candidate(double x, int level, double mu) {
  MasterSolution s;
  s.x = {{x}};
  s.y = {{level}};
  s.mu = {mu};
  return s;
}

}  // namespace

TEST_CASE("root bounds with and without valid inequalities") {
  const auto inst = micro_fixture();
  CHECK(rmp_root_bound(inst, false, false) == Approx(142).epsilon(1e-9));
  CHECK(rmp_root_bound(inst, true, false) == Approx(142 - 6 * 142 / 15.0).epsilon(1e-9));
  CHECK(rmp_root_bound(inst, true, false) == Approx(85.2).epsilon(1e-9));
  CHECK(rmp_root_bound(inst, false, true) == Approx(142 - 6 * 142 / 14.25).epsilon(1e-9));
  CHECK(rmp_root_bound(inst, false, true) == Approx(82.21).epsilon(1e-4));
  const auto rmp = build_rmp(inst, true, true);
  CHECK(rmp.model.num_variables() == 4);
}

TEST_CASE("cut separation on the fixture") {
  const auto inst = micro_fixture();
  const auto cut = separate_cut(inst, 0, candidate(10, 1, 142));
  REQUIRE(cut.has_value());
  CHECK(cut->a[0] == Approx(1.9));
  CHECK(cut->c == Approx(104));
  CHECK(cut->big_m == Approx(142));
  CHECK(cut->levels == LevelAssignment{1});
  CHECK(cut_rhs(*cut, {10.0}, {1}) == Approx(123));
  CHECK(cut_rhs(*cut, {5.0}, {0}) == Approx(1.9 * 5 + 104 + 142));

  CHECK(!separate_cut(inst, 0, candidate(4, 0, 45)).has_value());

  const auto low = separate_cut(inst, 0, candidate(4, 0, 50));
  REQUIRE(low.has_value());
  CHECK(low->a[0] == Approx(11.25));
  CHECK(low->c == Approx(0).scale(1));
  CHECK(low->partition.up.empty());
}

TEST_CASE("both Benders modes solve the fixture") {
  const auto inst = micro_fixture();
  BendersOptions exact;
  exact.epsilon = 0.0;
  const auto it = solve_iterative(inst, exact);
  CHECK(it.state.status == SolveStatus::Optimal);
  CHECK(it.state.best_value == Approx(63).epsilon(1e-9));
  CHECK(it.solution.x[0][0] == Approx(10));
  CHECK(it.solution.y[0][0] == 1);
  CHECK(it.state.gap <= 1e-9);
  CHECK(it.state.root_bound == Approx(142));

  exact.use_vi2 = true;
  const auto vi2 = solve_iterative(inst, exact);
  CHECK(vi2.state.best_value == Approx(63).epsilon(1e-9));
  CHECK(vi2.state.root_bound == Approx(142 - 6 * 142 / 14.25));
  CHECK(vi2.state.root_bound <= it.state.root_bound);

  const auto bc = solve_branch_and_cut(inst, exact);
  CHECK(bc.state.status == SolveStatus::Optimal);
  CHECK(bc.state.best_value == Approx(it.state.best_value).epsilon(1e-6));
  CHECK(bc.solution.y[0][0] == 1);
}

TEST_CASE("zero time limit") {
  BendersOptions o;
  o.time_limit = 0.0;
  const auto bc = solve_branch_and_cut(micro_fixture(), o);
  CHECK(bc.state.status == SolveStatus::TimeLimit);
  CHECK(bc.state.bound >= 63 - 1e-9);
  const auto it = solve_iterative(micro_fixture(), o);
  CHECK(it.state.status == SolveStatus::TimeLimit);
  CHECK(it.state.bound >= 63 - 1e-9);
}

TEST_CASE("no demand") {
  auto inst = micro_fixture();
  inst.salvage_price[0] = 5.99;
  for (auto& d : inst.distributions[0])
    for (auto& s : d.scenarios) s.demand = 0.0;
  BendersOptions o;
  o.epsilon = 0.0;
  const auto r = solve_iterative(inst, o);
  CHECK(r.state.best_value == Approx(0).scale(1));
  CHECK(r.solution.x[0][0] == Approx(0).scale(1));
}

TEST_CASE("cut properties on generated instances") {
  std::mt19937_64 rng(77);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = generate(testing::small_config(2, 2, 2, 4, 100 + seed));
    const auto bounds = compute_bounds(inst);
    BendersOptions o;
    o.epsilon = 0.0;
    const auto res = solve_iterative(inst, o);
    REQUIRE(!res.state.cuts.empty());

    // Monotone log.
    for (std::size_t k = 1; k < res.state.log.size(); ++k) {
      CHECK(res.state.log[k].v_rmp <= res.state.log[k - 1].v_rmp);
      CHECK(res.state.log[k].v_best >= res.state.log[k - 1].v_best);
    }

    // Ceiling and uniqueness per (p, d, partition).
    std::map<std::pair<std::size_t, std::size_t>, std::set<std::vector<std::uint64_t>>> seen;
    for (const auto& c : res.state.cuts) {
      CHECK(seen[{c.p, c.d}].insert(c.partition.up_mask).second);
      for (double a : c.a) CHECK(a >= 0.0);
      CHECK(c.c >= 0.0);
    }
    for (const auto& [key, masks] : seen)
      CHECK(masks.size() <= (1u << inst.distributions[key.first][key.second].scenarios.size()));

    // Validity at random feasible points.
    for (int k = 0; k < 1000; ++k) {
      const auto sol = testing::random_feasible(inst, rng);
      for (const auto& c : res.state.cuts) {
        const double q = expected_revenue(inst, c.p, sol.x[c.p], sol.y[c.p]);
        CHECK(q <= cut_rhs(c, sol.x[c.p], sol.y[c.p]) + 1e-6);
      }
    }

    // Tightness at the generating point and on its partition neighborhood.
    for (int k = 0; k < 200; ++k) {
      auto sol = testing::random_feasible(inst, rng);
      sol.mu = bounds.revenue_cap;
      for (std::size_t p = 0; p < inst.num_products(); ++p) {
        const auto cut = separate_cut(inst, p, sol);
        const double q = expected_revenue(inst, p, sol.x[p], sol.y[p]);
        if (!cut) {
          CHECK(sol.mu[p] <= q + 1e-6 * (1 + std::abs(q)));
          continue;
        }
        CHECK(cut_rhs(*cut, sol.x[p], sol.y[p]) == Approx(q).epsilon(1e-9));
        auto nearby = sol.x[p];
        for (auto& v : nearby) v *= 1.0 - 1e-7;
        const std::size_t d = infer_distribution(inst, p, sol.y[p]);
        if (partition(inst, p, d, nearby).up_mask == cut->partition.up_mask)
          CHECK(cut_rhs(*cut, nearby, sol.y[p]) ==
                Approx(expected_revenue(inst, p, nearby, sol.y[p])).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("valid inequalities order the root bounds") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = generate(testing::small_config(3, 2, 2, 3, 200 + seed));
    const double none = rmp_root_bound(inst, false, false);
    const double vi1 = rmp_root_bound(inst, true, false);
    const double vi2 = rmp_root_bound(inst, false, true);
    CHECK(vi1 <= none + 1e-9 * (1 + std::abs(none)));
    CHECK(vi2 <= vi1 + 1e-9 * (1 + std::abs(vi1)));
  }
}

TEST_CASE("iterative and branch-and-cut agree") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = generate(testing::small_config(2, 2, 2, 3, 300 + seed));
    BendersOptions o;
    o.epsilon = 1e-6;
    o.use_vi2 = seed % 2 == 0;
    const auto a = solve_iterative(inst, o);
    const auto b = solve_branch_and_cut(inst, o);
    const double ref = solve_oracle(inst).objective;
    CHECK(a.state.best_value == Approx(ref).epsilon(1e-6));
    CHECK(b.state.best_value == Approx(ref).epsilon(1e-6));
    CHECK(evaluate_full(inst, b.solution.x, b.solution.y) == Approx(b.state.best_value).epsilon(1e-9));
  }
}

TEST_CASE("iteration log csv") {
  BendersOptions o;
  o.epsilon = 0.0;
  const auto r = solve_iterative(micro_fixture(), o);
  std::ostringstream out;
  write_iteration_csv(r.state, out);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "k,v_RMP,v_MP,v_MP_best,gap,cuts_added,elapsed_seconds");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == static_cast<int>(r.state.log.size()));
}
