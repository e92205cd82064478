// Copyright 2026 The Authors.
//
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


// Command-line front end. Talks to the library only through detmax.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "detmax/detmax.h"

namespace {

using nlohmann::json;

struct CliError {
  detmax_status status;
  std::string message;
};

void Check(detmax_status status) {
  if (status != DETMAX_OK) throw CliError{status, detmax_last_error()};
}

std::string ReadFile(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{DETMAX_INVALID_ARGUMENT, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw CliError{DETMAX_INVALID_ARGUMENT, "cannot write " + out_path};
  out << text;
}

// Takes ownership of a library string.
std::string Take(char* s) {
  std::string out = s == nullptr ? "" : s;
  detmax_string_free(s);
  return out;
}

struct InstanceDeleter {
  void operator()(detmax_instance* p) const { detmax_instance_free(p); }
};
struct CoresetDeleter {
  void operator()(detmax_coreset* p) const { detmax_coreset_free(p); }
};
using InstancePtr = std::unique_ptr<detmax_instance, InstanceDeleter>;
using CoresetPtr = std::unique_ptr<detmax_coreset, CoresetDeleter>;

struct InstanceSource {
  std::string json_path;
  std::string csv_path;
  std::string constraint;
};

void AddInstanceOptions(CLI::App* cmd, InstanceSource& src) {
  auto* json_opt =
      cmd->add_option("-i,--instance", src.json_path, "Instance JSON file");
  auto* csv_opt = cmd->add_option("--csv", src.csv_path,
                                  "Points CSV (id,group,c0,...)");
  cmd->add_option("--constraint", src.constraint,
                  "Constraint JSON text or file, used with --csv");
  json_opt->excludes(csv_opt);
}

InstancePtr LoadInstance(const InstanceSource& src) {
  detmax_instance* raw = nullptr;
  if (!src.csv_path.empty()) {
    if (src.constraint.empty()) {
      throw CliError{DETMAX_INVALID_ARGUMENT, "--csv needs --constraint"};
    }
    std::string constraint = src.constraint;
    if (!constraint.empty() && constraint.front() != '{') {
      constraint = ReadFile(constraint);
    }
    Check(detmax_instance_from_csv(ReadFile(src.csv_path).c_str(),
                                   constraint.c_str(), &raw));
  } else {
    if (src.json_path.empty()) {
      throw CliError{DETMAX_INVALID_ARGUMENT, "--instance or --csv is required"};
    }
    Check(detmax_instance_from_json(ReadFile(src.json_path).c_str(), &raw));
  }
  return InstancePtr(raw);
}

CoresetPtr LoadCoreset(const std::string& path) {
  detmax_coreset* raw = nullptr;
  Check(detmax_coreset_from_json(ReadFile(path).c_str(), &raw));
  return CoresetPtr(raw);
}

int RegimeValue(const std::string& name) {
  if (name == "auto") return DETMAX_REGIME_AUTO;
  if (name == "lowk") return DETMAX_REGIME_LOWK;
  return DETMAX_REGIME_HIGHK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composable coresets for determinant maximization"};
  app.set_version_flag("--version", std::string(detmax_version()));
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("-o,--out", out_path, "Output file (default stdout)");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  std::string generator = "random";
  std::string spec_path;
  json spec;
  int n = 10, d = 2, k = 2, probe = 1;
  std::vector<int> caps;
  std::vector<double> scales;
  std::vector<std::int64_t> subset;
  std::string constraint_type = "cardinality", shape = "flat";
  bool grid = false, gen_csv = false;
  std::uint64_t seed = 0;
  double big_m = 1e3, beta = 0.05;
  gen->add_option("--generator", generator, "random|lb_low_dim|lb_high_dim|hard")
      ->check(CLI::IsMember({"random", "lb_low_dim", "lb_high_dim", "hard"}));
  gen->add_option("--spec", spec_path, "Generator spec JSON file (overrides flags)");
  gen->add_option("-n", n, "Number of points");
  gen->add_option("-d,--dim", d, "Dimension");
  gen->add_option("-k", k, "Rank (cardinality, pairs laminar, hard)");
  gen->add_option("--constraint", constraint_type, "cardinality|partition|laminar")
      ->check(CLI::IsMember({"cardinality", "partition", "laminar"}));
  gen->add_option("--caps", caps, "Class caps")->delimiter(',');
  gen->add_option("--shape", shape, "Laminar shape: flat|chain|pairs");
  gen->add_flag("--grid", grid, "Integer coordinates in -3..3");
  gen->add_option("--seed", seed, "Seed");
  gen->add_option("--M", big_m, "Large scale M of the lower-bound constructions");
  gen->add_option("--beta", beta, "Hard-instance beta");
  gen->add_option("--scales", scales, "Scales M_i (lb_high_dim)")->delimiter(',');
  gen->add_option("--probe", probe, "Probe index (lb_high_dim, 1-based)");
  gen->add_option("--subset", subset, "Ids of U (lb_low_dim)")->delimiter(',');
  gen->add_flag("--points-csv", gen_csv, "Emit the points as CSV");

  // coreset
  auto* coreset = app.add_subcommand("coreset", "Build a coreset");
  InstanceSource coreset_src;
  AddInstanceOptions(coreset, coreset_src);
  double zeta = 1.01;
  std::string regime = "auto";
  bool ridge = false;
  std::vector<std::int64_t> ids;
  coreset->add_option("--zeta", zeta, "Local-optimum slack (> 1)");
  coreset->add_option("--regime", regime, "auto|lowk|highk")
      ->check(CLI::IsMember({"auto", "lowk", "highk"}));
  coreset->add_flag("--ridge", ridge, "Ridge in the local-search kernel");
  coreset->add_option("--ids", ids, "Subset V of the points (default all)")
      ->delimiter(',');

  // solve
  auto* solve = app.add_subcommand("solve", "Maximize the volume");
  InstanceSource solve_src;
  AddInstanceOptions(solve, solve_src);
  std::string coreset_path, method = "brute";
  solve->add_option("--coreset", coreset_path, "Restrict to a coreset JSON");
  solve->add_option("--method", method, "brute|greedy|local")
      ->check(CLI::IsMember({"brute", "greedy", "local"}));

  // compose
  auto* compose = app.add_subcommand("compose", "Union of coresets");
  std::vector<std::string> coreset_paths;
  compose->add_option("coresets", coreset_paths, "Coreset JSON files")
      ->required();

  // run
  auto* run = app.add_subcommand("run", "Distributed pipeline");
  InstanceSource run_src;
  AddInstanceOptions(run, run_src);
  detmax_config config;
  detmax_config_init(&config);
  std::string split = "random", csv_out;
  bool identity = false, refine = false;
  run->add_option("--parts", config.parts, "Number of parts")
      ->check(CLI::PositiveNumber);
  run->add_option("--zeta", zeta, "Local-optimum slack (> 1)");
  run->add_option("--seed", seed, "Split seed");
  run->add_option("--regime", regime, "auto|lowk|highk")
      ->check(CLI::IsMember({"auto", "lowk", "highk"}));
  run->add_option("--split", split, "random|adversarial")
      ->check(CLI::IsMember({"random", "adversarial"}));
  run->add_flag("--identity", identity, "Parts keep all points");
  run->add_flag("--refine", refine, "Swap refinement for large coresets");
  run->add_flag("--ridge", ridge, "Ridge in the local-search kernel");
  run->add_option("--csv-out", csv_out, "Write the CSV summary here");

  // bench
  auto* bench = app.add_subcommand("bench", "Coreset construction timing");
  std::vector<int> n_list{1000, 10000, 100000};
  int repeats = 1, bench_d = 8, bench_k = 12;
  bench->add_option("-d,--dim", bench_d, "Dimension");
  bench->add_option("-k", bench_k, "Rank");
  bench->add_option("--n", n_list, "Ascending point counts")->delimiter(',');
  bench->add_option("--seed", seed, "Seed");
  bench->add_option("--repeats", repeats, "Runs per n (minimum is kept)");

  // verify
  auto* verify = app.add_subcommand("verify", "Property suites");
  std::string suite = "all";
  int trials = 50;
  verify->add_option("--suite", suite,
                     "cauchy_binet|sandwich|local_opt|composability|sizes|"
                     "laminar_exchange|all");
  verify->add_option("--trials", trials, "Random instances per suite");
  verify->add_option("--seed", seed, "Seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (!spec_path.empty()) {
        spec = json::parse(ReadFile(spec_path));
      } else {
        spec["generator"] = generator;
        spec["seed"] = seed;
        spec["M"] = big_m;
        if (generator == "random") {
          spec.update({{"n", n}, {"d", d}, {"k", k},
                       {"constraint", constraint_type}, {"caps", caps},
                       {"laminar_shape", shape}, {"integer_grid", grid}});
        } else if (generator == "lb_low_dim") {
          spec.update({{"caps", caps}, {"d", d}});
          if (!subset.empty()) spec["subset"] = subset;
        } else if (generator == "lb_high_dim") {
          spec.update({{"k", k}, {"d", d}, {"scales", scales}, {"probe", probe}});
        } else {
          spec.update({{"d", d}, {"k", k}, {"beta", beta}});
        }
      }
      detmax_instance* raw = nullptr;
      Check(detmax_instance_generate(spec.dump().c_str(), &raw));
      InstancePtr inst(raw);
      char* text = nullptr;
      Check(detmax_instance_to_json(inst.get(), &text));
      std::string doc = Take(text);
      if (gen_csv) {
        const json j = json::parse(doc);
        std::string csv = "id,group";
        for (int c = 0; c < j["dim"].get<int>(); ++c) {
          csv += ",c" + std::to_string(c);
        }
        csv += "\n";
        for (const json& p : j["points"]) {
          csv += std::to_string(p["id"].get<std::int64_t>()) + ",";
          if (!p["group"].is_null()) csv += std::to_string(p["group"].get<int>());
          for (const json& x : p["coords"]) {
            char buffer[32];
            std::snprintf(buffer, sizeof(buffer), ",%.17g", x.get<double>());
            csv += buffer;
          }
          csv += "\n";
        }
        doc = csv;
      }
      Emit(doc, out_path);
    } else if (coreset->parsed()) {
      InstancePtr inst = LoadInstance(coreset_src);
      detmax_config c;
      detmax_config_init(&c);
      c.zeta = zeta;
      c.regime = RegimeValue(regime);
      c.ridge = ridge ? 1 : 0;
      detmax_coreset* raw = nullptr;
      Check(detmax_coreset_build(inst.get(), ids.empty() ? nullptr : ids.data(),
                                 ids.size(), &c, &raw));
      CoresetPtr cs(raw);
      char* text = nullptr;
      Check(detmax_coreset_to_json(cs.get(), &text));
      Emit(Take(text), out_path);
    } else if (solve->parsed()) {
      InstancePtr inst = LoadInstance(solve_src);
      CoresetPtr cs;
      if (!coreset_path.empty()) cs = LoadCoreset(coreset_path);
      char* text = nullptr;
      Check(detmax_solve(inst.get(), cs.get(), method.c_str(), &text));
      Emit(Take(text), out_path);
    } else if (compose->parsed()) {
      std::vector<CoresetPtr> owned;
      std::vector<const detmax_coreset*> handles;
      for (const std::string& path : coreset_paths) {
        owned.push_back(LoadCoreset(path));
        handles.push_back(owned.back().get());
      }
      char* text = nullptr;
      Check(detmax_compose(handles.data(), handles.size(), &text));
      Emit(Take(text), out_path);
    } else if (run->parsed()) {
      InstancePtr inst = LoadInstance(run_src);
      config.zeta = zeta;
      config.seed = seed;
      config.regime = RegimeValue(regime);
      config.ridge = ridge ? 1 : 0;
      config.split =
          split == "random" ? DETMAX_SPLIT_RANDOM : DETMAX_SPLIT_ADVERSARIAL;
      config.identity_coreset = identity ? 1 : 0;
      config.refine = refine ? 1 : 0;
      char* text = nullptr;
      char* csv = nullptr;
      Check(detmax_run(inst.get(), &config, &text, &csv));
      const std::string csv_text = Take(csv);
      Emit(Take(text), out_path);
      if (!csv_out.empty()) Emit(csv_text, csv_out);
    } else if (bench->parsed()) {
      char* text = nullptr;
      Check(detmax_bench(bench_d, bench_k, n_list.data(), n_list.size(), seed, repeats,
                         &text));
      Emit(Take(text), out_path);
    } else if (verify->parsed()) {
      char* text = nullptr;
      Check(detmax_verify(suite.c_str(), trials, seed, &text));
      const std::string doc = Take(text);
      Emit(doc, out_path);
      if (!json::parse(doc)["passed"].get<bool>()) return 1;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << detmax_status_name(e.status) << ": " << e.message
              << "\n";
    return static_cast<int>(e.status) == 0 ? 1 : static_cast<int>(e.status);
  } catch (const json::exception& e) {
    std::cerr << "error: parse: " << e.what() << "\n";
    return DETMAX_PARSE;
  }
  return 0;
}
