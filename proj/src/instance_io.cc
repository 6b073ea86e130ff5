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

#include "yieldplan/instance_io.h"

#include <fstream>

#include "yieldplan/errors.h"

namespace yieldplan {

using nlohmann::json;

json instance_to_json(const ProductionInstance& inst, const json& meta) {
  json j;
  j["format_version"] = kInstanceFormatVersion;
  j["products"] = inst.products;
  j["facilities"] = inst.facilities;
  j["capacity"] = inst.capacity;
  j["cost"] = inst.unit_cost;
  j["price"] = inst.full_price;
  j["salvage"] = inst.salvage_price;
  json levels = json::array();
  for (const auto& row : inst.levels) {
    json jrow = json::array();
    for (const auto& cell : row) {
      json jcell = json::array();
      for (const auto& lv : cell) jcell.push_back({{"lo", lv.lower}, {"hi", lv.upper}});
      jrow.push_back(std::move(jcell));
    }
    levels.push_back(std::move(jrow));
  }
  j["levels"] = std::move(levels);
  json dists = json::array();
  for (const auto& per_product : inst.distributions) {
    json jp = json::array();
    for (const auto& dist : per_product) {
      json scen = json::array();
      for (const auto& s : dist.scenarios)
        scen.push_back({{"pi", s.probability}, {"yields", s.yields}, {"demand", s.demand}});
      jp.push_back({{"levels", dist.enforced_level}, {"scenarios", std::move(scen)}});
    }
    dists.push_back(std::move(jp));
  }
  j["distributions"] = std::move(dists);
  if (!meta.is_null()) j["meta"] = meta;
  return j;
}

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw FormatError(std::string("missing field '") + name + "'");
  return j.at(name);
}

template <typename T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad value for '") + what + "': " + e.what());
  }
}

}  // namespace

ProductionInstance instance_from_json(const json& j) {
  if (j.contains("format_version") && as<int>(j["format_version"], "format_version") != kInstanceFormatVersion)
    throw FormatError("unsupported instance format_version");
  ProductionInstance inst;
  inst.products = as<std::vector<std::string>>(field(j, "products"), "products");
  inst.facilities = as<std::vector<std::string>>(field(j, "facilities"), "facilities");
  inst.capacity = as<std::vector<double>>(field(j, "capacity"), "capacity");
  inst.unit_cost = as<std::vector<std::vector<double>>>(field(j, "cost"), "cost");
  inst.full_price = as<std::vector<double>>(field(j, "price"), "price");
  inst.salvage_price = as<std::vector<double>>(field(j, "salvage"), "salvage");

  const json& levels = field(j, "levels");
  if (!levels.is_array()) throw FormatError("'levels' must be an array");
  for (const auto& row : levels) {
    if (!row.is_array()) throw FormatError("'levels' rows must be arrays");
    auto& out_row = inst.levels.emplace_back();
    for (const auto& cell : row) {
      if (!cell.is_array()) throw FormatError("'levels' cells must be arrays");
      auto& out_cell = out_row.emplace_back();
      for (const auto& lv : cell)
        out_cell.push_back({as<double>(field(lv, "lo"), "lo"), as<double>(field(lv, "hi"), "hi")});
    }
  }

  const json& dists = field(j, "distributions");
  if (!dists.is_array()) throw FormatError("'distributions' must be an array");
  for (const auto& per_product : dists) {
    if (!per_product.is_array()) throw FormatError("'distributions' entries must be arrays");
    auto& out = inst.distributions.emplace_back();
    for (const auto& jd : per_product) {
      JointDistribution dist;
      dist.id = static_cast<int>(out.size());
      dist.enforced_level = as<std::vector<int>>(field(jd, "levels"), "levels");
      const json& scen = field(jd, "scenarios");
      if (!scen.is_array()) throw FormatError("'scenarios' must be an array");
      for (const auto& js : scen)
        dist.scenarios.push_back({as<double>(field(js, "pi"), "pi"),
                                  as<std::vector<double>>(field(js, "yields"), "yields"),
                                  as<double>(field(js, "demand"), "demand")});
      out.push_back(std::move(dist));
    }
  }
  return inst;
}

void write_instance(const std::filesystem::path& path,
                    const ProductionInstance& inst, const json& meta) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  out << instance_to_json(inst, meta).dump(1) << '\n';
}

ProductionInstance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return instance_from_json(j);
}

}  // namespace yieldplan
