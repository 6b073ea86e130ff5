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

#ifndef YIELDPLAN_TESTS_INSTANCES_H_
#define YIELDPLAN_TESTS_INSTANCES_H_

#include <random>

#include "yieldplan/generator.h"
#include "yieldplan/model.h"
#include "yieldplan/secondstage.h"

namespace yieldplan::testing {

// Random first-stage decision satisfying capacity, level choice and level
// bounds. mu is left empty.
MasterSolution random_feasible(const ProductionInstance& inst, std::mt19937_64& rng);

// Small generated instance with demand and capacity scaled down so that the
// level structure matters at integer-ish magnitudes.
GeneratorConfig small_config(int products, int facilities, int levels, int scenarios,
                             std::uint64_t seed);

}  // namespace yieldplan::testing

#endif  // YIELDPLAN_TESTS_INSTANCES_H_
