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

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "instances.h"
#include "yieldplan/analysis.h"
#include "yieldplan/errors.h"
#include "yieldplan/generator.h"
#include "yieldplan/instance_io.h"

using namespace yieldplan;

TEST_CASE("instance json round trip") {
  const auto inst = generate(testing::small_config(3, 2, 3, 4, 11));
  const auto j = instance_to_json(inst, generator_meta(testing::small_config(3, 2, 3, 4, 11)));
  CHECK(j.at("format_version") == kInstanceFormatVersion);
  const auto back = instance_from_json(j);
  CHECK(instance_to_json(back, j.at("meta")) == j);
  CHECK(j.at("meta").at("generator").at("seed") == 11);
}

TEST_CASE("field names follow the file layout") {
  const auto j = instance_to_json(micro_fixture());
  for (const char* key : {"products", "facilities", "capacity", "cost", "price", "salvage", "levels", "distributions"})
    CHECK(j.contains(key));
  CHECK(j["levels"][0][0][1]["lo"] == 10.0);
  CHECK(j["distributions"][0][1]["scenarios"][1]["yields"][0] == 0.9);
  CHECK(j["distributions"][0][1]["scenarios"][1]["pi"] == 0.5);
}

TEST_CASE("malformed files raise format errors") {
  auto j = instance_to_json(micro_fixture());
  j.erase("capacity");
  CHECK_THROWS_AS(instance_from_json(j), FormatError);
  j = instance_to_json(micro_fixture());
  j["price"] = "cheap";
  CHECK_THROWS_AS(instance_from_json(j), FormatError);

  const auto dir = std::filesystem::temp_directory_path() / "yieldplan_io_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "bad.json") << "{ not json";
  CHECK_THROWS_AS(read_instance(dir / "bad.json"), FormatError);
  CHECK_THROWS_AS(read_instance(dir / "missing.json"), FormatError);
  write_instance(dir / "micro.json", micro_fixture());
  CHECK(instance_to_json(read_instance(dir / "micro.json")) == instance_to_json(micro_fixture()));
  std::filesystem::remove_all(dir);
}
