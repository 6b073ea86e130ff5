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

#include <sstream>

#include "doctest.h"
#include "instances.h"
#include "yieldplan/analysis.h"
#include "yieldplan/errors.h"
#include "yieldplan/generator.h"

using namespace yieldplan;
using doctest::Approx;

TEST_CASE("oracle on the fixture") {
  const auto r = solve_oracle(micro_fixture());
  CHECK(r.objective == Approx(63).epsilon(1e-9));
  CHECK(r.solution.x[0][0] == Approx(10));
  CHECK(r.solution.y[0][0] == 1);
  CHECK(r.lp_solves == 2);

  auto tight = micro_fixture();
  tight.capacity[0] = 5.0;
  const auto t = solve_oracle(tight);
  CHECK(t.objective == Approx(26.25).epsilon(1e-9));
  CHECK(t.solution.x[0][0] == Approx(5));
  CHECK(t.solution.y[0][0] == 0);
}

TEST_CASE("oracle counts and budget") {
  const auto inst = generate(testing::small_config(2, 2, 2, 3, 4));
  CHECK(level_assignment_count(inst) == 16);
  CHECK(solve_oracle(inst).lp_solves == 16);
  CHECK_THROWS_AS(solve_oracle(inst, 15), OracleTooLargeError);
  const auto big = generate(testing::small_config(10, 5, 3, 1, 4));
  CHECK_THROWS_AS(solve_oracle(big), OracleTooLargeError);
}

TEST_CASE("oracle is independent of the thread count") {
  const auto inst = generate(testing::small_config(3, 2, 2, 3, 8));
  const auto a = solve_oracle(inst, kDefaultOracleBudget, 1);
  const auto b = solve_oracle(inst, kDefaultOracleBudget, 3);
  CHECK(a.objective == b.objective);
  CHECK(a.solution.y == b.solution.y);
  CHECK(a.lp_solves == b.lp_solves);
}

TEST_CASE("oracle ties go to the lowest level vector") {
  // Identical data on both levels; the optimum x = 10 lies on the shared
  // endpoint, so both assignments reach the same value.
  auto inst = micro_fixture();
  inst.distributions[0][0].scenarios = inst.distributions[0][1].scenarios;
  for (auto& d : inst.distributions[0])
    for (auto& s : d.scenarios) s.demand = 9.0;
  const auto r = solve_oracle(inst);
  CHECK(r.solution.x[0][0] == Approx(10));
  CHECK(r.solution.y[0][0] == 0);
}

TEST_CASE("expected-value instances") {
  const auto inst = micro_fixture();
  const auto full = expected_value_instance(inst, EvVariant::Full);
  CHECK(validate_instance(full).empty());
  REQUIRE(full.distributions[0][0].scenarios.size() == 1);
  CHECK(full.distributions[0][0].scenarios[0].yields[0] == Approx(0.75));
  CHECK(full.distributions[0][1].scenarios[0].yields[0] == Approx(0.95));
  CHECK(full.distributions[0][1].scenarios[0].demand == Approx(8));
  const auto supply = expected_value_instance(inst, EvVariant::Supply);
  CHECK(supply.distributions[0][0].scenarios.size() == 2);
  CHECK(supply.distributions[0][0].scenarios[1].yields[0] == Approx(0.75));

  for (auto v : {EvVariant::Supply, EvVariant::Demand, EvVariant::Full}) {
    const auto ev = solve_expected_value(inst, v);
    CHECK(ev.decision.y[0][0] == 1);
    CHECK(ev.decision.x[0][0] == Approx(10));
    CHECK(ev.true_objective == Approx(63));
  }
  CHECK(solve_expected_value(inst, EvVariant::Full).ev_objective == Approx(63));
}

TEST_CASE("EV problem: Benders and extensive form reach the same optimum") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto inst = generate(testing::small_config(2, 2, 2, 3, 900 + seed));
    for (auto v : {EvVariant::Supply, EvVariant::Demand, EvVariant::Full}) {
      const auto b = solve_expected_value(inst, v, EvMethod::Benders);
      const auto e = solve_expected_value(inst, v, EvMethod::Extensive);
      CHECK(b.ev_objective == Approx(e.ev_objective).epsilon(1e-6));
      CHECK(b.true_objective == Approx(evaluate_full(inst, b.decision.x, b.decision.y)));
    }
  }
}

TEST_CASE("demand expectation is probability weighted") {
  auto inst = micro_fixture();
  inst.distributions[0][0].scenarios[0].demand = 4.0;
  inst.distributions[0][0].scenarios[0].probability = 0.25;
  inst.distributions[0][0].scenarios[1].probability = 0.75;
  const auto ev = expected_value_instance(inst, EvVariant::Demand);
  CHECK(ev.distributions[0][0].scenarios[0].demand == Approx(0.25 * 4 + 0.75 * 8));
  CHECK(ev.distributions[0][0].scenarios[0].yields[0] == 1.0);
}

TEST_CASE("EV decisions are evaluated under their own distribution") {
  int differing = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = generate(testing::small_config(2, 2, 2, 4, 500 + seed));
    const auto sp = solve_oracle(inst);
    const auto ev = solve_expected_value(inst, EvVariant::Full);
    const auto rec = evaluate_recourse(inst, ev.decision.x, ev.decision.y);
    double q = 0.0;
    for (std::size_t p = 0; p < inst.num_products(); ++p) {
      CHECK(rec.distribution[p] == infer_distribution(inst, p, ev.decision.y[p]));
      q += rec.expected_revenue[p];
      for (std::size_t f = 0; f < inst.num_facilities(); ++f) q -= inst.unit_cost[p][f] * ev.decision.x[p][f];
    }
    CHECK(ev.true_objective == Approx(q).epsilon(1e-12));
    CHECK(ev.true_objective <= sp.objective + 1e-6 * (1 + std::abs(sp.objective)));
    differing += ev.decision.y != sp.solution.y;
  }
  CHECK(differing > 0);
}

TEST_CASE("value of the stochastic solution") {
  const auto micro = compute_vss(micro_fixture(), 63.0);
  CHECK(micro.ratio_defined);
  CHECK(micro.vss_full == Approx(0).scale(1));
  CHECK(micro.vss_supply == Approx(0).scale(1));
  CHECK(micro.vss_demand == Approx(0).scale(1));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = generate(testing::small_config(2, 2, 2, 3, 700 + seed));
    const double sp = solve_oracle(inst).objective;
    const auto r = compute_vss(inst, sp);
    CHECK(r.v_ev_full <= sp + 1e-6 * (1 + std::abs(sp)));
    if (r.ratio_defined) {
      CHECK(r.vss_full >= -1e-6);
      CHECK(r.vss_supply >= -1e-6);
      CHECK(r.vss_demand >= -1e-6);
    }
  }

  const auto flat = compute_vss(micro_fixture(), 0.0);
  CHECK(!flat.ratio_defined);
  CHECK(flat.vss_full == Approx(-63));
}

TEST_CASE("vss csv") {
  std::ostringstream out;
  write_vss_csv_header(out);
  write_vss_csv_row(out, "micro", compute_vss(micro_fixture(), 63.0));
  const std::string s = out.str();
  CHECK(s.rfind("instance,v_SP,v_EV_supply,v_EV_demand,v_EV_full,VSS_supply,VSS_demand,VSS_full", 0) == 0);
  CHECK(s.find("\nmicro,63,63,63,63,0,0,0,true,true\n") != std::string::npos);
}
