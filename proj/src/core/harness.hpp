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


// Simulated distributed pipeline (split, per-part coresets, compose, solve),
// the coreset scaling benchmark and the property-suite drivers.

#ifndef DETMAX_CORE_HARNESS_HPP_
#define DETMAX_CORE_HARNESS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "core/coreset.hpp"
#include "core/instances.hpp"
#include "core/solver.hpp"

namespace detmax {

enum class SplitMode {
  kRandom,       // seeded shuffle, then contiguous chunks of equal size
  kAdversarial,  // part = group mod parts (id mod parts without a group)
};

const char* SplitModeName(SplitMode mode);
SplitMode ParseSplitMode(const std::string& name);

struct RunConfig {
  CoresetConfig coreset;
  int parts = 1;
  std::uint64_t seed = 0;
  SplitMode split = SplitMode::kRandom;
  // Each part keeps all of its points instead of building a coreset.
  bool identity_coreset = false;
  // Swap refinement when the coreset is too large for brute force.
  bool refine = false;
};

struct PartReport {
  std::size_t source_size = 0;
  std::size_t coreset_size = 0;
  std::uint64_t declared_bound = 0;
};

struct RunReport {
  nlohmann::json instance_meta = nlohmann::json::object();
  std::string constraint_type;
  Regime regime = Regime::kHighK;
  int ell = 1;
  int rank = 0;
  double zeta = kDefaultZeta;
  std::uint64_t seed = 0;
  int parts = 1;
  SplitMode split = SplitMode::kRandom;
  bool identity_coreset = false;
  std::vector<PartReport> part_reports;
  IdSet composed;
  SolveResult coreset_solution;
  // Absent when full enumeration exceeds OracleCap().
  std::optional<SolveResult> full_solution;
  // full OPT - coreset OPT in log domain, when both are finite.
  std::optional<double> ratio;
  double approx_exponent = 0.0;
  // Seconds per phase; excluded from determinism checks.
  std::map<std::string, double> timings;
};

// Partition of the instance ids into `parts` id sets (some possibly empty).
std::vector<IdSet> SplitGround(const Instance& instance, int parts,
                               std::uint64_t seed, SplitMode mode);

// Throws kInfeasible when the instance has no base.
RunReport RunDistributed(const Instance& instance, const RunConfig& config);

nlohmann::json RunReportToJson(const RunReport& report);
// Header line plus one row.
std::string RunReportCsv(const RunReport& report);

struct BenchRow {
  int n = 0;
  double seconds = 0.0;
  std::size_t coreset_size = 0;
  std::uint64_t declared_bound = 0;
};

// Times partition coreset construction on random partition instances with
// rank k split into classes of cap at most 3; the minimum over `repeats`
// runs is kept. n_list must be ascending.
std::vector<BenchRow> BenchScaling(int d, int k, const std::vector<int>& n_list,
                                   std::uint64_t seed, int repeats = 1);
std::string BenchCsv(const std::vector<BenchRow>& rows);

// Names accepted by RunVerifySuite.
std::vector<std::string> VerifySuiteNames();

// Runs a property suite on `trials` seeded random instances and returns
// {"suite", "trials", "checks", "failures", "passed", "examples"}.
nlohmann::json RunVerifySuite(const std::string& suite, int trials,
                              std::uint64_t seed);

}  // namespace detmax

#endif  // DETMAX_CORE_HARNESS_HPP_
