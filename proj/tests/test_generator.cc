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
#include <random>

#include "doctest.h"
#include "instances.h"
#include "yieldplan/errors.h"
#include "yieldplan/generator.h"
#include "yieldplan/instance_io.h"

using namespace yieldplan;
using doctest::Approx;

TEST_CASE("truncated normal") {
  std::mt19937_64 rng(1);
  CHECK(truncated_normal(0.9, 0.0, 0.25, 1.0, rng) == 0.9);
  CHECK(truncated_normal(-5.0, 0.1, 0.25, 1.0, rng) == 0.25);
  CHECK_THROWS_AS(truncated_normal(0.5, 0.1, 1.0, 1.0, rng), ConfigError);
  CHECK_THROWS_AS(truncated_normal(0.5, 0.1, 1.0, 0.5, rng), ConfigError);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double v = truncated_normal(0.7, 0.1, 0.25, 1.0, rng);
    REQUIRE(v >= 0.25);
    REQUIRE(v <= 1.0);
    sum += v;
  }
  CHECK(std::abs(sum / n - 0.7) <= 0.001);
}

TEST_CASE("yield catalog") {
  CHECK(yield_catalog(3, 3, 3).mean == 0.90);
  CHECK(yield_catalog(3, 3, 3).std == 0.01);
  CHECK(yield_catalog(2, 1, 1).mean == 0.50);
  CHECK(yield_catalog(2, 1, 1).std == 0.20);
  CHECK(yield_catalog(3, 2, 2).std == 0.15);
  CHECK(yield_catalog(2, 3, 2).std == 0.01);
  CHECK_THROWS_AS(yield_catalog(4, 1, 1), ConfigError);
  CHECK_THROWS_AS(yield_catalog(2, 1, 3), ConfigError);
}

TEST_CASE("instance shape and scenario count") {
  GeneratorConfig c;
  c.n_products = 5;
  c.n_facilities = 2;
  c.n_levels = 2;
  c.scenarios = 5;
  c.seed = 42;
  CHECK(scenario_count(c) == 125);
  const auto inst = generate(c);
  CHECK(inst.num_products() == 5);
  for (std::size_t p = 0; p < 5; ++p) {
    CHECK(inst.num_distributions(p) == 4);
    for (const auto& d : inst.distributions[p]) CHECK(d.scenarios.size() == 5);
  }
  CHECK(inst.levels[0][0][0].upper == Approx(15000));
  CHECK(inst.levels[0][0][1].lower == Approx(15000));
  CHECK(inst.levels[0][0][1].upper == Approx(20000));
  c.n_levels = 3;
  const auto three = generate(c);
  CHECK(three.levels[1][1][1].lower == Approx(10000));
  CHECK(three.levels[1][1][1].upper == Approx(15000));
  CHECK(three.distributions[0].size() == 9);
  CHECK(three.distributions[0][5].enforced_level == LevelAssignment{1, 2});
}

TEST_CASE("generator invariants") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    GeneratorConfig c;
    c.n_products = 2 + static_cast<int>(seed % 4);
    c.n_facilities = 2 + static_cast<int>(seed % 3);
    c.n_levels = 2 + static_cast<int>(seed % 2);
    c.scenarios = 1 + static_cast<int>(seed % 7);
    c.seed = seed;
    const auto inst = generate(c);
    CHECK(validate_instance(inst).empty());
    const double chi = c.demand_mean * c.n_products / c.n_facilities;
    for (double b : inst.capacity) {
      CHECK(b >= 0.9 * chi - 1e-9);
      CHECK(b <= 1.1 * chi + 1e-9);
    }
    for (std::size_t p = 0; p < inst.num_products(); ++p) {
      CHECK(inst.full_price[p] >= 125);
      CHECK(inst.full_price[p] <= 185);
      CHECK(inst.salvage_price[p] >= 15);
      CHECK(inst.salvage_price[p] <= 40);
      for (double cost : inst.unit_cost[p]) {
        CHECK(cost >= 60);
        CHECK(cost <= 80);
      }
      const auto& first = inst.distributions[p][0].scenarios;
      for (std::size_t d = 0; d < inst.num_distributions(p); ++d) {
        const auto& dist = inst.distributions[p][d];
        // Mixed-radix enumeration, facility 0 most significant.
        int code = 0;
        for (int l : dist.enforced_level) code = code * c.n_levels + l;
        CHECK(code == static_cast<int>(d));
        for (std::size_t s = 0; s < dist.scenarios.size(); ++s) {
          CHECK(dist.scenarios[s].probability == 1.0 / c.scenarios);
          CHECK(dist.scenarios[s].demand == first[s].demand);
          CHECK(dist.scenarios[s].demand >= 0.0);
          for (double y : dist.scenarios[s].yields) {
            CHECK(y >= 0.25);
            CHECK(y <= 1.0);
          }
        }
      }
    }
  }
}

TEST_CASE("determinism and metadata") {
  const auto c = testing::small_config(4, 3, 2, 6, 99);
  const auto a = instance_to_json(generate(c), generator_meta(c)).dump();
  const auto b = instance_to_json(generate(c), generator_meta(c)).dump();
  CHECK(a == b);
  const auto j = nlohmann::json::parse(a);
  CHECK(j["meta"]["generator"]["seed"] == 99);
  CHECK(config_from_json(j["meta"]["generator"]).n_facilities == 3);
  auto other = c;
  other.seed = 100;
  CHECK(instance_to_json(generate(other)).dump() != instance_to_json(generate(c)).dump());
}

TEST_CASE("adding products keeps earlier products and facilities") {
  auto c = testing::small_config(3, 2, 2, 4, 5);
  const auto small = generate(c);
  c.n_products = 5;
  const auto large = generate(c);
  for (std::size_t p = 0; p < 3; ++p) {
    CHECK(small.unit_cost[p] == large.unit_cost[p]);
    CHECK(small.distributions[p][2].scenarios[1].yields == large.distributions[p][2].scenarios[1].yields);
  }
}

TEST_CASE("bad configs") {
  GeneratorConfig c;
  c.n_levels = 4;
  CHECK_THROWS_AS(generate(c), ConfigError);
  c = {};
  c.scenarios = 0;
  CHECK_THROWS_AS(generate(c), ConfigError);
  c = {};
  c.cost = {80, 60};
  CHECK_THROWS_AS(generate(c), ConfigError);
  c = {};
  c.salvage = {15, 70};
  CHECK_THROWS_AS(generate(c), ConfigError);
}
