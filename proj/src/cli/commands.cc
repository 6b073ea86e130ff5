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
#include <ostream>

#include "CLI11.hpp"
#include "yieldplan/analysis.h"
#include "yieldplan/cli.h"
#include "yieldplan/errors.h"
#include "yieldplan/instance_io.h"

namespace yieldplan::cli {

namespace {

namespace fs = std::filesystem;

struct GenerateArgs {
  GeneratorConfig config;
  int count = 1;
  std::string out_dir = ".";
};

struct SolveArgs {
  std::string instance;
  std::string method = kDefaultMethod;
  double gap = kDefaultGap;
  double time_limit = kDefaultTimeLimit;
  int threads = 1;
  std::string output;
  std::string log;
};

struct VssArgs {
  std::string instance;
  std::string variant = "all";
  std::string method = kDefaultMethod;
  double gap = 0.0;
  double time_limit = kDefaultTimeLimit;
  std::string output;
  std::string id;
};

struct BenchArgs {
  std::string campaign;
  std::string out_dir = ".";
  int workers = 0;
};

int exit_for(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
    case SolveStatus::GapLimit: return kExitOk;
    case SolveStatus::TimeLimit: return kExitTimeLimit;
    default: return kExitFailure;
  }
}

// Loads and validates; invalid data is reported like an unreadable file.
ProductionInstance load(const std::string& path) {
  ProductionInstance inst = read_instance(path);
  require_valid(inst);
  return inst;
}

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  validate_config(a.config);
  if (a.count < 1) throw ConfigError("--count must be at least 1");
  fs::create_directories(a.out_dir);
  for (int i = 0; i < a.count; ++i) {
    GeneratorConfig c = a.config;
    c.seed = a.config.seed + static_cast<std::uint64_t>(i);
    const std::string name = "inst_F" + std::to_string(c.n_facilities) + "_P" + std::to_string(c.n_products) +
                             "_L" + std::to_string(c.n_levels) + "_S" + std::to_string(c.scenarios) + "_seed" +
                             std::to_string(c.seed) + ".json";
    const fs::path path = fs::path(a.out_dir) / name;
    write_instance(path, generate(c), generator_meta(c));
    out << path.string() << '\n';
  }
  return kExitOk;
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const ProductionInstance inst = load(a.instance);
  const MethodRun run = run_method(inst, a.method, a.gap, a.time_limit, a.threads);
  const std::string text = solution_to_json(inst, run).dump(2) + "\n";
  if (a.output.empty()) {
    out << text;
  } else {
    std::ofstream(a.output) << text;
    out << a.method << ' ' << to_string(run.status) << " objective "
        << (run.has_solution ? std::to_string(run.objective) : std::string("none")) << " seconds "
        << run.wall_seconds << '\n';
  }
  if (!a.log.empty()) {
    if (!run.benders) throw ConfigError("--log is only available for the bbm methods");
    std::ofstream log(a.log);
    write_iteration_csv(*run.benders, log);
  }
  return exit_for(run.status);
}

int cmd_vss(const VssArgs& a, std::ostream& out) {
  const ProductionInstance inst = load(a.instance);
  const MethodRun sp = run_method(inst, a.method, a.gap, a.time_limit);
  const bool all = a.variant == "all";
  VssReport r = compute_vss(inst, sp.objective, all || a.variant == "supply", all || a.variant == "demand",
                            all || a.variant == "full");
  r.sp_optimal = sp.status == SolveStatus::Optimal || sp.status == SolveStatus::GapLimit;
  const std::string id = a.id.empty() ? fs::path(a.instance).stem().string() : a.id;
  if (a.output.empty()) {
    write_vss_csv_header(out);
    write_vss_csv_row(out, id, r);
  } else {
    std::ofstream f(a.output);
    write_vss_csv_header(f);
    write_vss_csv_row(f, id, r);
  }
  return r.sp_optimal ? kExitOk : kExitTimeLimit;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  Campaign c = read_campaign(a.campaign);
  if (a.workers > 0) c.workers = a.workers;
  const auto rows = run_campaign(c);
  const auto agg = aggregate(rows);
  fs::create_directories(a.out_dir);
  std::ofstream runs(fs::path(a.out_dir) / "bench_runs.csv");
  write_bench_csv(runs, rows);
  std::ofstream summary(fs::path(a.out_dir) / "bench_summary.csv");
  write_aggregate_csv(summary, agg);
  print_summary(out, agg);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Production planning under demand and endogenous supply uncertainty", "yieldplan"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate random instances");
  g->add_option("--products", gen.config.n_products)->required()->check(CLI::PositiveNumber);
  g->add_option("--facilities", gen.config.n_facilities)->required()->check(CLI::PositiveNumber);
  g->add_option("--levels", gen.config.n_levels)->required()->check(CLI::IsMember({2, 3}));
  g->add_option("--scenarios", gen.config.scenarios)->required()->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.config.seed)->required();
  g->add_option("--count", gen.count, "Number of instances, seeds seed..seed+count-1")->check(CLI::PositiveNumber);
  g->add_option("-o,--output-dir", gen.out_dir);

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Solve an instance");
  s->add_option("instance", sol.instance)->required();
  s->add_option("--method", sol.method)->check(CLI::IsMember(method_names()))->capture_default_str();
  s->add_option("--gap", sol.gap)->check(CLI::NonNegativeNumber)->capture_default_str();
  s->add_option("--time-limit", sol.time_limit)->check(CLI::NonNegativeNumber)->capture_default_str();
  s->add_option("--threads", sol.threads, "Oracle worker threads")->check(CLI::PositiveNumber);
  s->add_option("-o,--output", sol.output, "Solution file (default: stdout)");
  s->add_option("--log", sol.log, "Iteration log CSV (bbm methods)");

  VssArgs vss;
  auto* v = app.add_subcommand("vss", "Value of the stochastic solution");
  v->add_option("instance", vss.instance)->required();
  v->add_option("--variant", vss.variant)->check(CLI::IsMember({"supply", "demand", "full", "all"}));
  v->add_option("--method", vss.method)->check(CLI::IsMember(method_names()))->capture_default_str();
  v->add_option("--gap", vss.gap)->check(CLI::NonNegativeNumber)->capture_default_str();
  v->add_option("--time-limit", vss.time_limit)->check(CLI::NonNegativeNumber)->capture_default_str();
  v->add_option("-o,--output", vss.output, "CSV file (default: stdout)");
  v->add_option("--id", vss.id, "Instance id column (default: file stem)");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run a benchmark campaign");
  b->add_option("campaign", bench.campaign)->required();
  b->add_option("-o,--output-dir", bench.out_dir);
  b->add_option("--workers", bench.workers, "Override the campaign's worker count")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_generate(gen, out);
    if (s->parsed()) return cmd_solve(sol, out);
    if (v->parsed()) return cmd_vss(vss, out);
    if (b->parsed()) return cmd_bench(bench, out);
  } catch (const OracleTooLargeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitOracleBudget;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace yieldplan::cli
