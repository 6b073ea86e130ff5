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

#include "yieldplan/generator.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "yieldplan/errors.h"

namespace yieldplan {

namespace {

// Substream tags. Each purpose (and each product, for per-product draws) gets
// its own generator so that changing one dimension does not shift the draws
// of another.
enum Stream : std::uint64_t {
  kCosts = 1,
  kPrices = 2,
  kSalvage = 3,
  kCapacity = 4,
  kFamilies = 5,
  kYields = 6,
  kDemands = 7,
};

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 substream(std::uint64_t seed, Stream purpose, std::uint64_t index) {
  const std::uint64_t a = splitmix64(seed ^ splitmix64(purpose));
  return std::mt19937_64(splitmix64(a ^ splitmix64(index + 0x5851f42d4c957f2dULL)));
}

double uniform(std::mt19937_64& rng, const Range& r) {
  return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

void check_range(const Range& r, const char* name) {
  if (!(r.lo <= r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi))
    throw ConfigError(std::string("empty range for ") + name);
}

}  // namespace

void validate_config(const GeneratorConfig& c) {
  if (c.n_products < 1) throw ConfigError("n_products must be at least 1");
  if (c.n_facilities < 1) throw ConfigError("n_facilities must be at least 1");
  if (c.n_levels != 2 && c.n_levels != 3) throw ConfigError("n_levels must be 2 or 3");
  if (c.scenarios < 1) throw ConfigError("scenarios must be at least 1");
  check_range(c.cost, "cost");
  check_range(c.price, "price");
  check_range(c.salvage, "salvage");
  if (!(c.yield_clamp.lo < c.yield_clamp.hi) || c.yield_clamp.lo < 0.0 || c.yield_clamp.hi > 1.0)
    throw ConfigError("yield truncation must satisfy 0 <= lo < hi <= 1");
  if (c.cost.lo <= 0.0) throw ConfigError("costs must be positive");
  if (c.salvage.lo < 0.0) throw ConfigError("salvage must be nonnegative");
  if (c.salvage.hi >= c.cost.lo) throw ConfigError("salvage range must lie below the cost range");
  if (c.price.lo <= c.salvage.hi) throw ConfigError("price range must lie above the salvage range");
  if (!(c.capacity_slack >= 0.0 && c.capacity_slack < 1.0)) throw ConfigError("capacity_slack must be in [0,1)");
  if (!(c.demand_mean > 0.0)) throw ConfigError("demand_mean must be positive");
  if (!(c.demand_std >= 0.0)) throw ConfigError("demand_std must be nonnegative");
  const double joint = std::pow(static_cast<double>(c.n_levels), c.n_facilities);
  if (joint > 1e6) throw ConfigError("too many level combinations per product");
}

nlohmann::json config_to_json(const GeneratorConfig& c) {
  auto range = [](const Range& r) { return nlohmann::json::array({r.lo, r.hi}); };
  return {{"n_products", c.n_products},
          {"n_facilities", c.n_facilities},
          {"n_levels", c.n_levels},
          {"scenarios", c.scenarios},
          {"seed", c.seed},
          {"cost", range(c.cost)},
          {"price", range(c.price)},
          {"salvage", range(c.salvage)},
          {"capacity_slack", c.capacity_slack},
          {"demand_mean", c.demand_mean},
          {"demand_std", c.demand_std},
          {"yield_clamp", range(c.yield_clamp)}};
}

GeneratorConfig config_from_json(const nlohmann::json& j) {
  GeneratorConfig c;
  if (!j.is_object()) throw ConfigError("generator config must be an object");
  try {
    auto range = [&](const char* key, Range* r) {
      if (!j.contains(key)) return;
      const auto& v = j.at(key);
      if (!v.is_array() || v.size() != 2) throw ConfigError(std::string(key) + " must be [lo, hi]");
      *r = {v[0].get<double>(), v[1].get<double>()};
    };
    if (j.contains("n_products")) c.n_products = j.at("n_products").get<int>();
    if (j.contains("n_facilities")) c.n_facilities = j.at("n_facilities").get<int>();
    if (j.contains("n_levels")) c.n_levels = j.at("n_levels").get<int>();
    if (j.contains("scenarios")) c.scenarios = j.at("scenarios").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    range("cost", &c.cost);
    range("price", &c.price);
    range("salvage", &c.salvage);
    if (j.contains("capacity_slack")) c.capacity_slack = j.at("capacity_slack").get<double>();
    if (j.contains("demand_mean")) c.demand_mean = j.at("demand_mean").get<double>();
    if (j.contains("demand_std")) c.demand_std = j.at("demand_std").get<double>();
    range("yield_clamp", &c.yield_clamp);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad generator config: ") + e.what());
  }
  return c;
}

YieldNormal yield_catalog(int n_levels, int family, int level) {
  static const double kMean[3] = {0.50, 0.70, 0.90};
  static const double kStd2[3][2] = {{0.20, 0.10}, {0.20, 0.10}, {0.05, 0.01}};
  static const double kStd3[3][3] = {{0.20, 0.15, 0.10}, {0.20, 0.15, 0.10}, {0.05, 0.03, 0.01}};
  if (family < 1 || family > 3 || (n_levels != 2 && n_levels != 3) || level < 1 || level > n_levels)
    throw ConfigError("no yield distribution for |L|=" + std::to_string(n_levels) + ", family " +
                      std::to_string(family) + ", level " + std::to_string(level));
  const double sd = n_levels == 2 ? kStd2[family - 1][level - 1] : kStd3[family - 1][level - 1];
  return {kMean[family - 1], sd};
}

double truncated_normal(double mean, double std, double lo, double hi, std::mt19937_64& rng) {
  if (!(lo < hi)) throw ConfigError("truncation interval is empty");
  if (std <= 0.0) return std::clamp(mean, lo, hi);
  return std::clamp(std::normal_distribution<double>(mean, std)(rng), lo, hi);
}

long long scenario_count(const GeneratorConfig& c) {
  long long joint = 1;
  for (int f = 0; f < c.n_facilities; ++f) joint *= c.n_levels;
  return static_cast<long long>(c.scenarios) * c.n_products * (joint + 1);
}

ProductionInstance generate(const GeneratorConfig& c) {
  validate_config(c);
  const int np = c.n_products, nf = c.n_facilities, nl = c.n_levels, ns = c.scenarios;
  const double nu = c.demand_mean;
  ProductionInstance inst;
  for (int p = 0; p < np; ++p) inst.products.push_back("p" + std::to_string(p + 1));
  for (int f = 0; f < nf; ++f) inst.facilities.push_back("f" + std::to_string(f + 1));

  const double chi = nu * np / nf;
  auto cap_rng = substream(c.seed, kCapacity, 0);
  for (int f = 0; f < nf; ++f)
    inst.capacity.push_back(uniform(cap_rng, {chi - c.capacity_slack * chi, chi + c.capacity_slack * chi}));

  std::vector<double> fractions = nl == 2 ? std::vector<double>{0.0, 0.75, 1.0}
                                          : std::vector<double>{0.0, 0.5, 0.75, 1.0};
  std::vector<ProductionLevel> level_bounds;
  for (int l = 0; l < nl; ++l) level_bounds.push_back({fractions[l] * nu, fractions[l + 1] * nu});

  int joint = 1;
  for (int f = 0; f < nf; ++f) joint *= nl;

  for (int p = 0; p < np; ++p) {
    auto cost_rng = substream(c.seed, kCosts, p);
    auto price_rng = substream(c.seed, kPrices, p);
    auto salvage_rng = substream(c.seed, kSalvage, p);
    auto family_rng = substream(c.seed, kFamilies, p);
    auto yield_rng = substream(c.seed, kYields, p);
    auto demand_rng = substream(c.seed, kDemands, p);

    std::vector<double> cost(nf);
    for (int f = 0; f < nf; ++f) cost[f] = uniform(cost_rng, c.cost);
    inst.unit_cost.push_back(cost);
    inst.full_price.push_back(uniform(price_rng, c.price));
    inst.salvage_price.push_back(uniform(salvage_rng, c.salvage));
    inst.levels.emplace_back(nf, level_bounds);

    std::vector<int> family(nf);
    for (int f = 0; f < nf; ++f) family[f] = std::uniform_int_distribution<int>(1, 3)(family_rng);

    std::vector<double> demand(ns);
    for (int s = 0; s < ns; ++s)
      demand[s] = std::max(0.0, std::normal_distribution<double>(c.demand_mean, c.demand_std)(demand_rng));
    if (c.demand_std == 0.0) std::fill(demand.begin(), demand.end(), c.demand_mean);

    std::vector<JointDistribution> dists;
    for (int d = 0; d < joint; ++d) {
      JointDistribution jd;
      jd.id = d;
      jd.enforced_level.assign(nf, 0);
      for (int f = nf - 1, code = d; f >= 0; --f, code /= nl) jd.enforced_level[f] = code % nl;
      for (int s = 0; s < ns; ++s) {
        ScenarioRealization sc;
        sc.probability = 1.0 / ns;
        sc.demand = demand[s];
        for (int f = 0; f < nf; ++f) {
          const YieldNormal yn = yield_catalog(nl, family[f], jd.enforced_level[f] + 1);
          sc.yields.push_back(truncated_normal(yn.mean, yn.std, c.yield_clamp.lo, c.yield_clamp.hi, yield_rng));
        }
        jd.scenarios.push_back(std::move(sc));
      }
      dists.push_back(std::move(jd));
    }
    inst.distributions.push_back(std::move(dists));
  }
  return inst;
}

nlohmann::json generator_meta(const GeneratorConfig& config) {
  return {{"generator", config_to_json(config)}};
}

}  // namespace yieldplan
