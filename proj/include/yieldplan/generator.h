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

#ifndef YIELDPLAN_GENERATOR_H_
#define YIELDPLAN_GENERATOR_H_

#include <cstdint>
#include <random>

#include "json.hpp"
#include "yieldplan/model.h"

namespace yieldplan {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct GeneratorConfig {
  int n_products = 5;
  int n_facilities = 2;
  int n_levels = 2;  // 2 or 3
  int scenarios = 5;  // per distribution
  std::uint64_t seed = 0;
  Range cost{60.0, 80.0};
  Range price{125.0, 185.0};
  Range salvage{15.0, 40.0};
  double capacity_slack = 0.1;
  double demand_mean = 20000.0;
  double demand_std = 15000.0;
  Range yield_clamp{0.25, 1.0};
};

// Throws ConfigError.
void validate_config(const GeneratorConfig& config);

nlohmann::json config_to_json(const GeneratorConfig& config);
// Missing keys keep their defaults. Throws ConfigError on bad types.
GeneratorConfig config_from_json(const nlohmann::json& j);

struct YieldNormal {
  double mean = 0.0;
  double std = 0.0;
};

// Yield catalog: `family` in {1,2,3}, `level` in {1..n_levels}, 1-based as
// printed. Throws ConfigError for other arguments.
YieldNormal yield_catalog(int n_levels, int family, int level);

// Normal draw clamped to [lo, hi]. Throws ConfigError when lo >= hi.
double truncated_normal(double mean, double std, double lo, double hi,
                        std::mt19937_64& rng);

// S |P| (|L|^|F| + 1): yield scenarios of every joint distribution plus the
// demand scenarios of every product.
long long scenario_count(const GeneratorConfig& config);

// Per product: |L|^|F| joint distributions, one per level vector in
// mixed-radix order (facility 0 most significant), S equiprobable
// scenarios each; demand draw s is shared by scenario s of every
// distribution of the product.
ProductionInstance generate(const GeneratorConfig& config);

// {"generator": config_to_json(config)} for the instance file.
nlohmann::json generator_meta(const GeneratorConfig& config);

}  // namespace yieldplan

#endif  // YIELDPLAN_GENERATOR_H_
