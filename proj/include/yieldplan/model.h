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

#ifndef YIELDPLAN_MODEL_H_
#define YIELDPLAN_MODEL_H_

#include <cstddef>
#include <string>
#include <vector>

namespace yieldplan {

// Closed production interval [lower, upper] for one (product, facility).
struct ProductionLevel {
  double lower = 0.0;
  double upper = 0.0;
};

struct ScenarioRealization {
  double probability = 0.0;
  std::vector<double> yields;  // by facility, fraction in [0, 1]
  double demand = 0.0;
};

// One enforceable joint yield+demand distribution of a product. The vector
// enforced_level[f] is the level that must be chosen at facility f for this
// distribution to describe the product's uncertainty.
struct JointDistribution {
  int id = 0;
  std::vector<int> enforced_level;
  std::vector<ScenarioRealization> scenarios;
};

// Level choice per facility for one product.
using LevelAssignment = std::vector<int>;

// All indices are positional: p in [0, products.size()), f in
// [0, facilities.size()), levels[p][f][l], distributions[p][d].
struct ProductionInstance {
  std::vector<std::string> products;
  std::vector<std::string> facilities;
  std::vector<double> capacity;                  // B_f
  std::vector<std::vector<double>> unit_cost;    // C_pf
  std::vector<double> full_price;                // P_p
  std::vector<double> salvage_price;             // O_p
  std::vector<std::vector<std::vector<ProductionLevel>>> levels;
  std::vector<std::vector<JointDistribution>> distributions;

  std::size_t num_products() const { return products.size(); }
  std::size_t num_facilities() const { return facilities.size(); }
  std::size_t num_levels(std::size_t p, std::size_t f) const {
    return levels[p][f].size();
  }
  std::size_t num_distributions(std::size_t p) const {
    return distributions[p].size();
  }
};

// A single invariant breach. Coordinates that do not apply are -1.
struct Violation {
  std::string code;
  std::string message;
  int p = -1;
  int f = -1;
  int l = -1;
  int d = -1;
  int s = -1;

  bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

inline constexpr double kProbabilityTolerance = 1e-9;

// Checks every data invariant of the problem and reports all breaches.
// Never throws for well-shaped data; ragged arrays are reported as
// "shape" violations and stop the per-product checks that depend on them.
ValidationReport validate_instance(const ProductionInstance& inst);

// Throws ValidationError listing the first few violations.
void require_valid(const ProductionInstance& inst);

// l(p, f, d) for every facility. Throws LookupError on unknown (p, d).
LevelAssignment enforced_levels(const ProductionInstance& inst, std::size_t p,
                                std::size_t d);

// The distribution whose enforced levels equal `assignment`.
// Throws MapNotTotalError when none matches, LookupError on bad shapes.
std::size_t infer_distribution(const ProductionInstance& inst, std::size_t p,
                               const LevelAssignment& assignment);

// Constant-time d(y) lookup keyed by the mixed-radix code of the level
// vector (facility 0 most significant). Built once per instance.
class DistributionLookup {
 public:
  explicit DistributionLookup(const ProductionInstance& inst);

  std::size_t code(std::size_t p, const LevelAssignment& assignment) const;
  // Throws MapNotTotalError for unmapped assignments.
  std::size_t distribution(std::size_t p,
                           const LevelAssignment& assignment) const;

 private:
  std::vector<std::vector<std::size_t>> radix_;        // [p][f]
  std::vector<std::vector<std::size_t>> counts_;       // [p][f]
  std::vector<std::vector<long>> by_code_;             // [p][code] -> d or -1
};

}  // namespace yieldplan

#endif  // YIELDPLAN_MODEL_H_
