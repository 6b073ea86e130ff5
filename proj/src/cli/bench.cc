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

#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "toml.hpp"
#include "yieldplan/cli.h"
#include "yieldplan/errors.h"

namespace yieldplan::cli {

namespace {

template <typename T>
T get_or(const toml::table& t, const char* key, T fallback) {
  const toml::node* n = t.get(key);
  if (!n) return fallback;
  if constexpr (std::is_same_v<T, double>) {
    if (auto v = n->value<double>()) return *v;
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (auto v = n->value<std::string>()) return *v;
  } else {
    if (auto v = n->value<std::int64_t>()) return static_cast<T>(*v);
  }
  throw ConfigError(std::string("campaign key '") + key + "' has the wrong type");
}

template <typename T>
std::vector<T> array_of(const toml::table& t, const char* key) {
  std::vector<T> out;
  const toml::node* n = t.get(key);
  if (!n) return out;
  const toml::array* arr = n->as_array();
  if (!arr) throw ConfigError(std::string("campaign key '") + key + "' must be an array");
  for (const auto& e : *arr) {
    if constexpr (std::is_same_v<T, std::string>) {
      auto v = e.value<std::string>();
      if (!v) throw ConfigError(std::string("campaign key '") + key + "' must hold strings");
      out.push_back(*v);
    } else {
      auto v = e.value<std::int64_t>();
      if (!v) throw ConfigError(std::string("campaign key '") + key + "' must hold integers");
      out.push_back(static_cast<T>(*v));
    }
  }
  return out;
}

std::string num(double v) {
  if (!std::isfinite(v)) return "";
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

std::string class_label(const InstanceClass& c, int scenarios) {
  return "(" + std::to_string(c.facilities) + "," + std::to_string(c.products) + "," + std::to_string(c.levels) +
         ")xS=" + std::to_string(scenarios);
}

BenchRow execute(const Campaign& c, const InstanceClass& cls, int scenarios, std::uint64_t seed,
                 const std::string& method) {
  BenchRow row;
  row.cls = cls;
  row.scenarios = scenarios;
  row.seed = seed;
  row.method = method;
  try {
    GeneratorConfig g = c.base;
    g.n_facilities = cls.facilities;
    g.n_products = cls.products;
    g.n_levels = cls.levels;
    g.scenarios = scenarios;
    g.seed = seed;
    const MethodRun r = run_method(generate(g), method, c.gap, c.time_limit);
    row.status = to_string(r.status);
    row.has_objective = r.has_solution;
    row.objective = r.objective;
    row.bound = r.bound;
    row.gap = r.gap;
    row.iterations = r.iterations;
    row.nodes = r.nodes;
    row.cuts = r.cuts;
    row.wall_seconds = r.wall_seconds;
  } catch (const std::exception& e) {
    row.status = "Error";
    row.error = e.what();
  }
  return row;
}

}  // namespace

Campaign parse_campaign(const std::string& text) {
  toml::table t;
  try {
    t = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "campaign is not valid TOML: " << e.description() << " at line " << e.source().begin.line;
    throw ConfigError(msg.str());
  }
  Campaign c;
  const auto version = get_or<int>(t, "format_version", kCampaignFormatVersion);
  if (version != kCampaignFormatVersion)
    throw ConfigError("unsupported campaign format_version " + std::to_string(version));
  c.methods = array_of<std::string>(t, "methods");
  for (const auto& m : c.methods)
    if (!is_method(m)) throw ConfigError("unknown method '" + m + "' in campaign");
  c.scenarios = array_of<int>(t, "scenarios");
  c.seeds = array_of<std::uint64_t>(t, "seeds");
  if (t.contains("seed_start") || t.contains("seed_count")) {
    if (!c.seeds.empty()) throw ConfigError("give either seeds or seed_start/seed_count");
    const auto start = get_or<std::uint64_t>(t, "seed_start", 0);
    const auto count = get_or<int>(t, "seed_count", 1);
    for (int i = 0; i < count; ++i) c.seeds.push_back(start + static_cast<std::uint64_t>(i));
  }
  c.time_limit = get_or<double>(t, "time_limit", kDefaultTimeLimit);
  c.gap = get_or<double>(t, "gap", kDefaultGap);
  c.workers = get_or<int>(t, "workers", 1);
  if (c.workers < 1) throw ConfigError("workers must be at least 1");
  if (c.time_limit < 0 || c.gap < 0) throw ConfigError("time_limit and gap must be nonnegative");

  if (const toml::node* gen = t.get("generator")) {
    const toml::table* gt = gen->as_table();
    if (!gt) throw ConfigError("[generator] must be a table");
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : *gt) {
      const std::string key(k.str());
      if (auto d = v.value<double>()) j[key] = *d;
      else if (const toml::array* arr = v.as_array(); arr && arr->size() == 2)
        j[key] = {arr->at(0).value<double>().value_or(0.0), arr->at(1).value<double>().value_or(0.0)};
      else throw ConfigError("[generator] key '" + key + "' has an unsupported type");
    }
    c.base = config_from_json(j);
  }

  if (const toml::node* cls = t.get("classes")) {
    const toml::array* arr = cls->as_array();
    if (!arr) throw ConfigError("classes must be an array of tables");
    for (const auto& e : *arr) {
      const toml::table* ct = e.as_table();
      if (!ct) throw ConfigError("classes must be an array of tables");
      InstanceClass ic;
      ic.facilities = get_or<int>(*ct, "facilities", ic.facilities);
      ic.products = get_or<int>(*ct, "products", ic.products);
      ic.levels = get_or<int>(*ct, "levels", ic.levels);
      if (ic.levels != 2 && ic.levels != 3) throw ConfigError("class levels must be 2 or 3");
      if (ic.facilities < 1 || ic.products < 1) throw ConfigError("class sizes must be positive");
      c.classes.push_back(ic);
    }
  }
  return c;
}

Campaign read_campaign(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read campaign " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return parse_campaign(s.str());
}

std::vector<BenchRow> run_campaign(const Campaign& c) {
  struct Job {
    const InstanceClass* cls;
    int scenarios;
    std::uint64_t seed;
    const std::string* method;
  };
  std::vector<Job> jobs;
  for (const auto& cls : c.classes)
    for (int s : c.scenarios)
      for (auto seed : c.seeds)
        for (const auto& m : c.methods) jobs.push_back({&cls, s, seed, &m});

  std::vector<BenchRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();)
      rows[i] = execute(c, *jobs[i].cls, jobs[i].scenarios, jobs[i].seed, *jobs[i].method);
  };
  const int n = std::max(1, std::min<int>(c.workers, static_cast<int>(jobs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "facilities,products,levels,scenarios,seed,method,status,objective,bound,gap,iterations,nodes,cuts,"
         "wall_seconds,error\n";
  for (const auto& r : rows) {
    std::string err = r.error;
    for (auto& ch : err)
      if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
    out << r.cls.facilities << ',' << r.cls.products << ',' << r.cls.levels << ',' << r.scenarios << ',' << r.seed
        << ',' << r.method << ',' << r.status << ',' << (r.has_objective ? num(r.objective) : "") << ','
        << num(r.bound) << ',' << num(r.gap) << ',' << r.iterations << ',' << r.nodes << ',' << r.cuts << ','
        << num(r.wall_seconds) << ',' << err << '\n';
  }
}

std::vector<BenchAggregate> aggregate(const std::vector<BenchRow>& rows) {
  std::vector<BenchAggregate> out;
  std::map<std::tuple<std::string, int, int, int, int>, std::size_t> index;
  for (const auto& r : rows) {
    const auto key = std::make_tuple(r.method, r.cls.facilities, r.cls.products, r.cls.levels, r.scenarios);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, out.size()).first;
      BenchAggregate a;
      a.method = r.method;
      a.cls = r.cls;
      a.scenarios = r.scenarios;
      out.push_back(a);
    }
    BenchAggregate& a = out[it->second];
    a.mean_seconds = (a.mean_seconds * a.runs + r.wall_seconds) / (a.runs + 1);
    ++a.runs;
    a.solved += r.solved();
  }
  return out;
}

void write_aggregate_csv(std::ostream& out, const std::vector<BenchAggregate>& agg) {
  out << "method,facilities,products,levels,scenarios,runs,solved,percent_solved,mean_seconds\n";
  for (const auto& a : agg)
    out << a.method << ',' << a.cls.facilities << ',' << a.cls.products << ',' << a.cls.levels << ','
        << a.scenarios << ',' << a.runs << ',' << a.solved << ',' << num(a.percent_solved()) << ','
        << num(a.mean_seconds) << '\n';
}

void print_summary(std::ostream& out, const std::vector<BenchAggregate>& agg) {
  std::vector<std::string> methods, columns;
  std::map<std::pair<std::string, std::string>, const BenchAggregate*> cell;
  for (const auto& a : agg) {
    const std::string col = class_label(a.cls, a.scenarios);
    if (std::find(methods.begin(), methods.end(), a.method) == methods.end()) methods.push_back(a.method);
    if (std::find(columns.begin(), columns.end(), col) == columns.end()) columns.push_back(col);
    cell[{a.method, col}] = &a;
  }
  auto table = [&](const char* title, auto value) {
    out << title << '\n' << std::left << std::setw(12) << "method";
    for (const auto& c : columns) out << std::right << std::setw(18) << c;
    out << '\n';
    for (const auto& m : methods) {
      out << std::left << std::setw(12) << m;
      for (const auto& c : columns) {
        auto it = cell.find({m, c});
        out << std::right << std::setw(18);
        if (it == cell.end()) out << "-";
        else out << std::fixed << std::setprecision(2) << value(*it->second) << std::defaultfloat;
      }
      out << '\n';
    }
  };
  table("% solved", [](const BenchAggregate& a) { return a.percent_solved(); });
  table("mean seconds", [](const BenchAggregate& a) { return a.mean_seconds; });
}

}  // namespace yieldplan::cli
