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

#include <random>

#include "doctest.h"
#include "instances.h"
#include "yieldplan/analysis.h"
#include "yieldplan/errors.h"
#include "yieldplan/generator.h"
#include "yieldplan/model.h"

using namespace yieldplan;

namespace {

bool has_message(const ValidationReport& r, const std::string& text) {
  for (const auto& v : r)
    if (v.message.find(text) != std::string::npos) return true;
  return false;
}

// Two facilities with levels {A, B} and {C, D}; distributions d1..d4 map to
// (A,C), (A,D), (B,C), (B,D).
ProductionInstance two_facility_map() {
  ProductionInstance inst;
  inst.products = {"p"};
  inst.facilities = {"F1", "F2"};
  inst.capacity = {100.0, 100.0};
  inst.unit_cost = {{5.0, 5.0}};
  inst.full_price = {10.0};
  inst.salvage_price = {1.0};
  inst.levels = {{{{0.0, 10.0}, {10.0, 20.0}}, {{0.0, 10.0}, {10.0, 20.0}}}};
  const std::vector<std::vector<int>> map = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (int d = 0; d < 4; ++d)
    inst.distributions.resize(1), inst.distributions[0].push_back({d, map[d], {{1.0, {0.8, 0.7}, 5.0}}});
  return inst;
}

}  // namespace

TEST_CASE("fixture passes validation") {
  CHECK(validate_instance(micro_fixture()).empty());
}

TEST_CASE("salvage above cost is reported with coordinates") {
  auto inst = micro_fixture();
  inst.salvage_price[0] = 7.0;
  const auto r = validate_instance(inst);
  REQUIRE(!r.empty());
  CHECK(has_message(r, "salvage ≥ cost at (p1,f1)"));
  CHECK(r[0].p == 0);
  CHECK(r[0].f == 0);
  CHECK_THROWS_AS(require_valid(inst), ValidationError);
}

TEST_CASE("probability sum is reported") {
  auto inst = micro_fixture();
  inst.distributions[0][0].scenarios[1].probability = 0.6;
  const auto r = validate_instance(inst);
  CHECK(has_message(r, "probabilities sum to 1.1"));
}

TEST_CASE("other invariants are reported") {
  auto inst = micro_fixture();
  inst.distributions[0][1].scenarios[0].yields[0] = 1.2;
  inst.distributions[0][1].scenarios[1].demand = -1.0;
  inst.capacity[0] = -1.0;
  const auto r = validate_instance(inst);
  auto has_code = [&](const std::string& c) {
    for (const auto& v : r)
      if (v.code == c) return true;
    return false;
  };
  CHECK(has_code("yield_range"));
  CHECK(has_code("demand_negative"));
  CHECK(has_code("capacity_negative"));
}

TEST_CASE("overlapping level interiors are rejected, shared endpoints are not") {
  auto inst = micro_fixture();
  CHECK(validate_instance(inst).empty());
  inst.levels[0][0][1].lower = 9.0;
  CHECK(!validate_instance(inst).empty());
}

TEST_CASE("validation is idempotent") {
  auto inst = micro_fixture();
  inst.salvage_price[0] = 9.0;
  inst.distributions[0][0].scenarios[0].probability = 0.2;
  CHECK(validate_instance(inst) == validate_instance(inst));
}

TEST_CASE("enforced levels and inference") {
  const auto micro = micro_fixture();
  CHECK(enforced_levels(micro, 0, 1) == LevelAssignment{1});
  CHECK(infer_distribution(micro, 0, {0}) == 0);
  CHECK_THROWS_AS(enforced_levels(micro, 0, 2), LookupError);
  CHECK_THROWS_AS(enforced_levels(micro, 3, 0), LookupError);

  const auto t2 = two_facility_map();
  CHECK(validate_instance(t2).empty());
  CHECK(enforced_levels(t2, 0, 0) == LevelAssignment{0, 0});
  CHECK(enforced_levels(t2, 0, 3) == LevelAssignment{1, 1});
  CHECK(infer_distribution(t2, 0, {0, 1}) == 1);
}

TEST_CASE("missing distribution makes the map non-total") {
  auto inst = micro_fixture();
  inst.distributions[0].pop_back();
  CHECK_THROWS_AS(infer_distribution(inst, 0, {1}), MapNotTotalError);
  CHECK_THROWS_AS(DistributionLookup(inst).distribution(0, {1}), MapNotTotalError);
  CHECK(!validate_instance(inst).empty());
}

TEST_CASE("inference inverts the enforced-level map") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = generate(testing::small_config(3, 3, seed % 2 ? 3 : 2, 2, seed));
    const DistributionLookup lookup(inst);
    for (std::size_t p = 0; p < inst.num_products(); ++p)
      for (std::size_t d = 0; d < inst.num_distributions(p); ++d) {
        const auto lv = enforced_levels(inst, p, d);
        CHECK(infer_distribution(inst, p, lv) == d);
        CHECK(lookup.distribution(p, lv) == d);
      }
  }
}
