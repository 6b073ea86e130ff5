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

#ifndef YIELDPLAN_INSTANCE_IO_H_
#define YIELDPLAN_INSTANCE_IO_H_

#include <filesystem>
#include <string>

#include "json.hpp"
#include "yieldplan/model.h"

namespace yieldplan {

inline constexpr int kInstanceFormatVersion = 1;

// Instance JSON layout (arrays positional in product/facility order):
//   {"format_version": 1,
//    "products": ["p1", ...], "facilities": ["f1", ...],
//    "capacity": [B_f ...], "cost": [[C_pf ...] ...],
//    "price": [P_p ...], "salvage": [O_p ...],
//    "levels": [[[{"lo": L, "hi": U}, ...] per facility] per product],
//    "distributions": [[{"levels": [l per facility],
//                        "scenarios": [{"pi": .., "yields": [..], "demand": ..}]}
//                       ...] per product],
//    "meta": {...optional provenance...}}
nlohmann::json instance_to_json(const ProductionInstance& inst,
                                const nlohmann::json& meta = nullptr);

// Throws FormatError on missing fields or wrong types. Does not validate
// the problem invariants; call validate_instance() for that.
ProductionInstance instance_from_json(const nlohmann::json& j);

void write_instance(const std::filesystem::path& path,
                    const ProductionInstance& inst,
                    const nlohmann::json& meta = nullptr);
ProductionInstance read_instance(const std::filesystem::path& path);

}  // namespace yieldplan

#endif  // YIELDPLAN_INSTANCE_IO_H_
