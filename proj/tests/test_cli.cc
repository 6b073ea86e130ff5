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
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "instances.h"
#include "yieldplan/analysis.h"
#include "yieldplan/cli.h"
#include "yieldplan/instance_io.h"

using namespace yieldplan;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "yieldplan");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("yieldplan_cli_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("generate") {
  TempDir dir;
  auto one = cli_run({"generate", "--products", "5", "--facilities", "2", "--levels", "2", "--scenarios", "5",
                      "--seed", "7", "-o", dir / "one"});
  CHECK(one.code == 0);
  CHECK(std::distance(fs::directory_iterator(dir / "one"), fs::directory_iterator{}) == 1);

  auto five = cli_run({"generate", "--products", "5", "--facilities", "2", "--levels", "2", "--scenarios", "5",
                       "--seed", "7", "--count", "5", "-o", dir / "five"});
  CHECK(five.code == 0);
  for (int seed = 7; seed <= 11; ++seed) {
    const fs::path f = dir / ("five/inst_F2_P5_L2_S5_seed" + std::to_string(seed) + ".json");
    REQUIRE(fs::exists(f));
    const auto j = nlohmann::json::parse(slurp(f));
    CHECK(j["meta"]["generator"]["seed"] == seed);
    CHECK(j["format_version"] == kInstanceFormatVersion);
  }
  CHECK(slurp(dir / "one/inst_F2_P5_L2_S5_seed7.json") == slurp(dir / "five/inst_F2_P5_L2_S5_seed7.json"));

  CHECK(cli_run({"generate", "--products", "5", "--facilities", "2", "--levels", "4", "--scenarios", "5", "--seed",
                 "7"})
            .code == cli::kExitUsage);
  CHECK(cli_run({"generate", "--products", "5"}).code == cli::kExitUsage);
  CHECK(cli_run({}).code == cli::kExitUsage);
}

TEST_CASE("solve every method on the fixture") {
  TempDir dir;
  write_instance(dir / "micro.json", micro_fixture());
  for (const auto& m : cli::method_names()) {
    auto r = cli_run({"solve", dir / "micro.json", "--method", m, "--gap", "0"});
    CAPTURE(m);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["format_version"] == cli::kSolutionFormatVersion);
    CHECK(j["objective"].get<double>() == doctest::Approx(63).epsilon(1e-9));
    CHECK(j["levels"][0][0] == 1);
    CHECK(j["x"][0][0].get<double>() == doctest::Approx(10));
    CHECK(j["distributions"][0] == 1);
    CHECK(j["status"] == "Optimal");
  }
  auto dflt = cli_run({"solve", dir / "micro.json", "-o", dir / "a.json", "--log", dir / "log.csv"});
  CHECK(dflt.code == 0);
  CHECK(dflt.out.rfind("bbm-vi2 ", 0) == 0);
  CHECK(slurp(dir / "log.csv").rfind("k,v_RMP,v_MP,v_MP_best,gap,cuts_added,elapsed_seconds\n", 0) == 0);
  CHECK(cli_run({"solve", dir / "micro.json", "-o", dir / "b.json"}).code == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
}

TEST_CASE("solve exit codes") {
  TempDir dir;
  write_instance(dir / "micro.json", micro_fixture());
  CHECK(cli_run({"solve", dir / "missing.json"}).code == cli::kExitUsage);
  std::ofstream(dir / "broken.json") << "{\"products\": 3}";
  CHECK(cli_run({"solve", dir / "broken.json"}).code == cli::kExitUsage);
  CHECK(cli_run({"solve", dir / "micro.json", "--method", "cplex"}).code == cli::kExitUsage);

  auto tl = cli_run({"solve", dir / "micro.json", "--method", "bbm-bc", "--time-limit", "0"});
  CHECK(tl.code == cli::kExitTimeLimit);
  CHECK(nlohmann::json::parse(tl.out)["status"] == "TimeLimit");

  GeneratorConfig big = testing::small_config(5, 5, 3, 1, 3);
  write_instance(dir / "big.json", generate(big));
  CHECK(cli_run({"solve", dir / "big.json", "--method", "oracle"}).code == cli::kExitOracleBudget);
}

TEST_CASE("vss") {
  TempDir dir;
  write_instance(dir / "micro.json", micro_fixture());
  auto r = cli_run({"vss", dir / "micro.json", "--variant", "all"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\nmicro,63,63,63,63,0,0,0,true,true\n") != std::string::npos);
  auto one = cli_run({"vss", dir / "micro.json", "--variant", "full", "--id", "m"});
  CHECK(one.out.find("\nm,63,,,63,,,0,true,true\n") != std::string::npos);
  CHECK(cli_run({"vss", dir / "nope.json"}).code == cli::kExitUsage);
  CHECK(cli_run({"vss", dir / "micro.json", "--variant", "both"}).code == cli::kExitUsage);
  auto partial = cli_run({"vss", dir / "micro.json", "--method", "bbm-bc", "--time-limit", "0"});
  CHECK(partial.code == cli::kExitTimeLimit);
  CHECK(partial.out.find(",false\n") != std::string::npos);
}

TEST_CASE("bench") {
  TempDir dir;
  std::ofstream(dir / "empty.toml") << "format_version = 1\nmethods = [\"bbm\"]\n";
  CHECK(cli_run({"bench", dir / "empty.toml", "-o", dir / "empty"}).code == 0);
  const std::string header = slurp(dir / "empty/bench_runs.csv");
  CHECK(header.find('\n') == header.size() - 1);
  CHECK(header.rfind("facilities,products,levels,scenarios,seed,method,status", 0) == 0);

  std::ofstream(dir / "small.toml") << R"(format_version = 1
methods = ["bbm", "bbm-vi1", "bbm-vi2", "bbm-bc", "extensive", "oracle"]
scenarios = [2]
seed_start = 1
seed_count = 2
time_limit = 60.0
gap = 1e-7
workers = 2
[generator]
demand_mean = 100.0
demand_std = 75.0
[[classes]]
facilities = 2
products = 2
levels = 2
)";
  auto r = cli_run({"bench", dir / "small.toml", "-o", dir / "small"});
  CHECK(r.code == 0);
  CHECK(r.out.find("% solved") != std::string::npos);
  const auto c = cli::read_campaign(dir / "small.toml");
  CHECK(c.seeds == std::vector<std::uint64_t>{1, 2});
  const auto rows = cli::run_campaign(c);
  REQUIRE(rows.size() == 12);
  const std::vector<std::string> order = {"bbm", "bbm-vi1", "bbm-vi2", "bbm-bc", "extensive", "oracle"};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].solved());
    const auto& ref = rows[i - i % 6 + 5];  // oracle row of the same seed
    CHECK(rows[i].method == order[i % 6]);
    CHECK(rows[i].objective == doctest::Approx(ref.objective).epsilon(1e-6));
  }
  const auto agg = cli::aggregate(rows);
  CHECK(agg.size() == 6);
  for (const auto& a : agg) {
    CHECK(a.runs == 2);
    CHECK(a.percent_solved() == 100.0);
  }
  // The summary is recomputable from the run file.
  std::istringstream runs(slurp(dir / "small/bench_runs.csv"));
  std::string line;
  std::getline(runs, line);
  int n = 0;
  while (std::getline(runs, line)) ++n;
  CHECK(n == 12);

  std::ofstream(dir / "bad.toml") << "methods = [\"simplex\"]\n";
  CHECK(cli_run({"bench", dir / "bad.toml"}).code == cli::kExitUsage);
  CHECK(cli_run({"bench", dir / "absent.toml"}).code == cli::kExitUsage);
}
