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


#include "core/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "core/error.hpp"
#include "core/local_search.hpp"
#include "core/objective.hpp"
#include "core/serialization.hpp"

namespace detmax {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string FormatDouble(double x) {
  if (!std::isfinite(x)) return x < 0 ? "-inf" : "nan";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

void RequireFeasible(const Matroid& matroid) {
  Matroid::Tracker tracker(matroid);
  for (PointId id : matroid.ground()) {
    if (tracker.CanAdd(id)) tracker.Add(id);
  }
  Require(tracker.size() == static_cast<std::size_t>(matroid.rank()),
          ErrorCode::kInfeasible,
          "instance has no base: an independent set of size " +
              std::to_string(matroid.rank()) + " does not exist");
}

CoresetResult IdentityCoreset(const IdSet& part) {
  CoresetResult out;
  out.constraint_type = "identity";
  out.source = part;
  out.ids = part;
  out.declared_bound = part.size();
  return out;
}

int Uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

IdSet RandomSubset(std::mt19937_64& rng, const IdSet& ground, int size) {
  IdSet pool = ground;
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(static_cast<std::size_t>(size));
  std::sort(pool.begin(), pool.end());
  return pool;
}

// Random partition instance with n <= max_n, d <= max_d and rank <= max_k.
Instance RandomPartition(std::mt19937_64& rng, int max_n, int max_d,
                         int max_k) {
  RandomSpec spec;
  spec.constraint = "partition";
  spec.d = Uniform(rng, 1, max_d);
  const int s = Uniform(rng, 1, std::min(3, max_k));
  int k = 0;
  for (int i = 0; i < s; ++i) {
    const int cap = Uniform(rng, 1, std::max(1, std::min(2, max_k - k - (s - i - 1))));
    spec.caps.push_back(cap);
    k += cap;
  }
  spec.k = k;
  const int max_cap = *std::max_element(spec.caps.begin(), spec.caps.end());
  spec.n = Uniform(rng, std::max(k + 1, s * max_cap), max_n);
  spec.integer_grid = Uniform(rng, 0, 3) == 0;
  spec.seed = rng();
  return RandomInstance(spec);
}

Instance RandomLaminar(std::mt19937_64& rng, int max_n, int max_d) {
  RandomSpec spec;
  spec.constraint = "laminar";
  spec.d = Uniform(rng, 1, max_d);
  spec.seed = rng();
  switch (Uniform(rng, 0, 2)) {
    case 0:
      spec.laminar_shape = "flat";
      spec.caps = {Uniform(rng, 1, 2), Uniform(rng, 1, 2)};
      spec.n = Uniform(rng, 6, max_n);
      break;
    case 1:
      spec.laminar_shape = "chain";
      spec.caps = {1, Uniform(rng, 2, 3)};
      spec.n = Uniform(rng, 6, max_n);
      break;
    default:
      spec.laminar_shape = "pairs";
      spec.k = Uniform(rng, 2, 3);
      spec.n = Uniform(rng, 2 * spec.k, max_n);
      break;
  }
  return RandomInstance(spec);
}

struct SuiteTally {
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  nlohmann::json examples = nlohmann::json::array();

  void Check(bool ok, const std::function<nlohmann::json()>& describe) {
    ++checks;
    if (ok) return;
    ++failures;
    if (examples.size() < 5) examples.push_back(describe());
  }
};

void SuiteCauchyBinet(std::mt19937_64& rng, int trial, SuiteTally& tally) {
  RandomSpec spec;
  spec.d = Uniform(rng, 2, 4);
  spec.k = Uniform(rng, spec.d, 6);
  spec.n = Uniform(rng, spec.k, 10);
  spec.integer_grid = Uniform(rng, 0, 2) == 0;
  spec.seed = rng();
  const Instance inst = RandomInstance(spec);
  const IdSet s = RandomSubset(rng, inst.points.ids(), spec.k);
  const double direct = Mu(inst.points, s, spec.d);
  const double oracle = MuCauchyBinet(inst.points, s, spec.d);
  const bool ok = (direct == kNegInf && oracle == kNegInf) ||
                  std::abs(direct - oracle) <= 1e-8;
  tally.Check(ok, [&] {
    return nlohmann::json{{"trial", trial}, {"set", s},
                          {"mu", LogValueToJson(direct)},
                          {"mu_cauchy_binet", LogValueToJson(oracle)}};
  });
}

void SuiteSandwich(std::mt19937_64& rng, int trial, SuiteTally& tally) {
  RandomSpec spec;
  spec.d = Uniform(rng, 1, 4);
  spec.k = Uniform(rng, spec.d, 6);
  spec.n = Uniform(rng, spec.k, 10);
  spec.seed = rng();
  const Instance inst = RandomInstance(spec);
  WeightProfile w;
  w.ell = spec.d;
  w.zeta = std::uniform_real_distribution<double>(1.0, 2.0)(rng);
  w.coreset_ids =
      RandomSubset(rng, inst.points.ids(), Uniform(rng, 0, spec.n));
  const IdSet s = RandomSubset(rng, inst.points.ids(), spec.k);
  const double mu = Mu(inst.points, s, w.ell);
  const double tilde = MuTilde(inst.points, s, w);
  const double top = mu + ApproximationExponent(w.ell, w.zeta);
  const bool ok = (mu == kNegInf && tilde == kNegInf) ||
                  (mu <= tilde + 1e-9 && tilde <= top + 1e-9);
  tally.Check(ok, [&] {
    return nlohmann::json{{"trial", trial}, {"set", s},
                          {"mu", LogValueToJson(mu)},
                          {"mu_tilde", LogValueToJson(tilde)}};
  });
}

void SuiteLocalOpt(std::mt19937_64& rng, int trial, SuiteTally& tally) {
  RandomSpec spec;
  spec.d = Uniform(rng, 1, 4);
  spec.k = 1;
  spec.n = Uniform(rng, 1, 12);
  spec.integer_grid = Uniform(rng, 0, 2) == 0;
  spec.seed = rng();
  const Instance inst = RandomInstance(spec);
  const int ell = Uniform(rng, 1, spec.d);
  const LocalOptResult r = LocalOpt(inst.points, inst.points.ids(), ell);
  if (r.degenerate) return;
  const auto violation =
      VerifyLocalOpt(inst.points, inst.points.ids(), r.set, r.zeta);
  tally.Check(!violation, [&] {
    return nlohmann::json{{"trial", trial}, {"set", r.set},
                          {"out", violation->first}, {"in", violation->second}};
  });
}

void SuiteComposability(std::mt19937_64& rng, int trial, SuiteTally& tally) {
  const Instance inst = RandomPartition(rng, 14, 3, 5);
  RunConfig config;
  config.parts = Uniform(rng, 1, 3);
  config.seed = rng();
  config.split = Uniform(rng, 0, 1) == 0 ? SplitMode::kRandom
                                         : SplitMode::kAdversarial;
  const RunReport report = RunDistributed(inst, config);
  if (!report.full_solution) return;
  const double full = report.full_solution->log_value;
  const double core = report.coreset_solution.log_value;
  const bool ok = full == kNegInf ||
                  (core != kNegInf && full - core >= -1e-9 &&
                   full - core <= report.approx_exponent + 1e-9);
  tally.Check(ok, [&] { return RunReportToJson(report); });
  (void)trial;
}

void SuiteSizes(std::mt19937_64& rng, int trial, SuiteTally& tally) {
  const bool laminar = Uniform(rng, 0, 2) == 0;
  const Instance inst =
      laminar ? RandomLaminar(rng, 12, 3) : RandomPartition(rng, 30, 4, 6);
  CoresetConfig config;
  if (!laminar && Uniform(rng, 0, 1) == 0) config.regime = Regime::kHighK;
  const CoresetResult c =
      BuildCoreset(inst.points, inst.points.ids(), inst.constraint, config);
  tally.Check(c.ids.size() <= c.declared_bound, [&] {
    return nlohmann::json{{"trial", trial}, {"type", c.constraint_type},
                          {"size", c.ids.size()},
                          {"declared_bound", c.declared_bound}};
  });
}

void SuiteLaminarExchange(std::mt19937_64& rng, int trial, SuiteTally& tally) {
  const Instance inst = RandomLaminar(rng, 12, 3);
  const auto& laminar = std::get<LaminarConstraint>(inst.constraint);
  if (CoverNumber(laminar) > 2) return;
  const CoresetResult c =
      BuildCoreset(inst.points, inst.points.ids(), inst.constraint, {});
  WeightProfile w;
  w.coreset_ids = c.ids;
  w.zeta = c.zeta;
  w.ell = c.ell;
  w.regime = Regime::kHighK;
  const Matroid matroid(inst.constraint, inst.points);
  if (matroid.CandidateCount() > 5000) return;
  matroid.ForEachBase([&](const IdSet& base) {
    for (PointId h : Difference(base, c.ids)) {
      const PointId f =
          FindLaminarExchange(inst.points, base, h, c, laminar, w);
      const IdSet next = Swap(base, h, f);
      tally.Check(matroid.IsBase(next), [&] {
        return nlohmann::json{{"trial", trial}, {"base", base},
                              {"out", h}, {"in", f}};
      });
    }
    return true;
  });
}

using Suite = void (*)(std::mt19937_64&, int, SuiteTally&);

const std::vector<std::pair<std::string, Suite>>& Suites() {
  static const std::vector<std::pair<std::string, Suite>> suites = {
      {"cauchy_binet", SuiteCauchyBinet},
      {"sandwich", SuiteSandwich},
      {"local_opt", SuiteLocalOpt},
      {"composability", SuiteComposability},
      {"sizes", SuiteSizes},
      {"laminar_exchange", SuiteLaminarExchange},
  };
  return suites;
}

}  // namespace

const char* SplitModeName(SplitMode mode) {
  return mode == SplitMode::kRandom ? "random" : "adversarial";
}

SplitMode ParseSplitMode(const std::string& name) {
  if (name == "random") return SplitMode::kRandom;
  if (name == "adversarial") return SplitMode::kAdversarial;
  Fail(ErrorCode::kInvalidArgument, "unknown split mode '" + name + "'");
}

std::vector<IdSet> SplitGround(const Instance& instance, int parts,
                               std::uint64_t seed, SplitMode mode) {
  Require(parts >= 1, ErrorCode::kInvalidArgument, "parts must be >= 1");
  std::vector<IdSet> out(static_cast<std::size_t>(parts));
  const IdSet& ids = instance.points.ids();
  if (mode == SplitMode::kRandom) {
    IdSet order = ids;
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t n = order.size();
    for (std::size_t p = 0; p < out.size(); ++p) {
      const std::size_t lo = p * n / out.size();
      const std::size_t hi = (p + 1) * n / out.size();
      out[p].assign(order.begin() + static_cast<std::ptrdiff_t>(lo),
                    order.begin() + static_cast<std::ptrdiff_t>(hi));
      std::sort(out[p].begin(), out[p].end());
    }
    return out;
  }
  for (PointId id : ids) {
    const std::optional<int> g = instance.points.group(id);
    const std::int64_t key = g ? *g : id;
    const auto p = static_cast<std::size_t>(((key % parts) + parts) % parts);
    out[p].push_back(id);
  }
  return out;
}

RunReport RunDistributed(const Instance& instance, const RunConfig& config) {
  const auto total_start = Clock::now();
  const PointSet& points = instance.points;
  const Matroid full(instance.constraint, points);
  RequireFeasible(full);

  RunReport report;
  report.instance_meta = instance.meta;
  report.constraint_type = ConstraintTypeName(instance.constraint);
  report.rank = full.rank();
  report.zeta = config.coreset.zeta;
  report.seed = config.seed;
  report.parts = config.parts;
  report.split = config.split;
  report.identity_coreset = config.identity_coreset;
  const bool laminar =
      std::holds_alternative<LaminarConstraint>(instance.constraint);
  const RegimeChoice choice =
      ChooseRegime(full.rank(), points.dim(),
                   laminar ? std::optional<Regime>(Regime::kHighK)
                           : config.coreset.regime);
  report.regime = choice.regime;
  report.ell = choice.ell;
  report.approx_exponent = ApproximationExponent(choice.ell, report.zeta);

  auto start = Clock::now();
  const std::vector<IdSet> split =
      SplitGround(instance, config.parts, config.seed, config.split);
  report.timings["split"] = SecondsSince(start);

  start = Clock::now();
  std::vector<std::future<CoresetResult>> pending;
  pending.reserve(split.size());
  for (const IdSet& part : split) {
    pending.push_back(std::async(std::launch::async, [&, part] {
      if (config.identity_coreset) return IdentityCoreset(part);
      return BuildCoreset(points, part, instance.constraint, config.coreset);
    }));
  }
  std::vector<CoresetResult> coresets;
  coresets.reserve(pending.size());
  for (auto& f : pending) coresets.push_back(f.get());
  report.timings["coresets"] = SecondsSince(start);
  for (const CoresetResult& c : coresets) {
    report.part_reports.push_back(
        {c.source.size(), c.ids.size(), c.declared_bound});
  }

  start = Clock::now();
  report.composed = Compose(coresets);
  report.timings["compose"] = SecondsSince(start);

  start = Clock::now();
  report.coreset_solution = SolveOnCoreset(points, instance.constraint,
                                           report.composed, config.refine);
  report.timings["solve_coreset"] = SecondsSince(start);

  if (full.CandidateCount() <= OracleCap()) {
    start = Clock::now();
    report.full_solution = BruteForceOpt(points, full);
    report.timings["solve_full"] = SecondsSince(start);
    const double a = report.full_solution->log_value;
    const double b = report.coreset_solution.log_value;
    if (std::isfinite(a) && std::isfinite(b)) report.ratio = a - b;
  }
  report.timings["total"] = SecondsSince(total_start);
  return report;
}

nlohmann::json RunReportToJson(const RunReport& report) {
  nlohmann::json parts = nlohmann::json::array();
  for (const PartReport& p : report.part_reports) {
    parts.push_back({{"source_size", p.source_size},
                     {"coreset_size", p.coreset_size},
                     {"declared_bound", p.declared_bound}});
  }
  nlohmann::json out;
  out["config"] = {{"zeta", report.zeta},
                   {"ell", report.ell},
                   {"regime", RegimeName(report.regime)},
                   {"seed", report.seed},
                   {"parts", report.parts},
                   {"split", SplitModeName(report.split)},
                   {"identity_coreset", report.identity_coreset}};
  out["instance"] = {{"meta", report.instance_meta},
                     {"constraint_type", report.constraint_type},
                     {"rank", report.rank}};
  out["parts"] = std::move(parts);
  out["composed_size"] = report.composed.size();
  out["composed"] = report.composed;
  out["coreset_opt"] = SolveResultToJson(report.coreset_solution);
  out["full_opt"] = report.full_solution
                        ? SolveResultToJson(*report.full_solution)
                        : nlohmann::json(nullptr);
  out["oracle_skipped"] = !report.full_solution.has_value();
  out["ratio"] = report.ratio ? nlohmann::json(*report.ratio)
                              : nlohmann::json(nullptr);
  out["approx_exponent"] = report.approx_exponent;
  out["timings"] = report.timings;
  return out;
}

std::string RunReportCsv(const RunReport& report) {
  std::string out =
      "constraint,regime,ell,zeta,parts,split,composed_size,coreset_opt,"
      "full_opt,ratio,approx_exponent\n";
  out += report.constraint_type + "," + RegimeName(report.regime) + "," +
         std::to_string(report.ell) + "," + FormatDouble(report.zeta) + "," +
         std::to_string(report.parts) + "," + SplitModeName(report.split) +
         "," + std::to_string(report.composed.size()) + "," +
         FormatDouble(report.coreset_solution.log_value) + ",";
  if (report.full_solution) out += FormatDouble(report.full_solution->log_value);
  out += ",";
  if (report.ratio) out += FormatDouble(*report.ratio);
  out += "," + FormatDouble(report.approx_exponent) + "\n";
  return out;
}

std::vector<BenchRow> BenchScaling(int d, int k, const std::vector<int>& n_list,
                                   std::uint64_t seed, int repeats) {
  Require(d >= 1 && k >= 1 && repeats >= 1, ErrorCode::kInvalidArgument,
          "bench requires d, k, repeats >= 1");
  Require(std::is_sorted(n_list.begin(), n_list.end()),
          ErrorCode::kInvalidArgument, "n_list must be ascending");
  std::vector<int> caps;
  for (int left = k; left > 0; left -= 3) caps.push_back(std::min(3, left));

  std::vector<BenchRow> rows;
  for (int n : n_list) {
    RandomSpec spec;
    spec.n = n;
    spec.d = d;
    spec.k = k;
    spec.constraint = "partition";
    spec.caps = caps;
    spec.seed = seed;
    const Instance inst = RandomInstance(spec);
    const auto& partition = std::get<PartitionConstraint>(inst.constraint);
    BenchRow row;
    row.n = n;
    row.seconds = std::numeric_limits<double>::infinity();
    for (int r = 0; r < repeats; ++r) {
      const auto start = Clock::now();
      const CoresetResult c = BuildPartitionCoreset(
          inst.points, inst.points.ids(), partition, CoresetConfig{});
      row.seconds = std::min(row.seconds, SecondsSince(start));
      row.coreset_size = c.ids.size();
      row.declared_bound = c.declared_bound;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string BenchCsv(const std::vector<BenchRow>& rows) {
  std::string out = "n,seconds,coreset_size,declared_bound\n";
  for (const BenchRow& r : rows) {
    out += std::to_string(r.n) + "," + FormatDouble(r.seconds) + "," +
           std::to_string(r.coreset_size) + "," +
           std::to_string(r.declared_bound) + "\n";
  }
  return out;
}

std::vector<std::string> VerifySuiteNames() {
  std::vector<std::string> names;
  for (const auto& [name, suite] : Suites()) names.push_back(name);
  return names;
}

nlohmann::json RunVerifySuite(const std::string& suite, int trials,
                              std::uint64_t seed) {
  Require(trials >= 0, ErrorCode::kInvalidArgument, "trials must be >= 0");
  const auto& suites = Suites();
  auto it = std::find_if(suites.begin(), suites.end(),
                         [&](const auto& s) { return s.first == suite; });
  Require(it != suites.end(), ErrorCode::kInvalidArgument,
          "unknown verify suite '" + suite + "'");
  std::mt19937_64 rng(seed);
  SuiteTally tally;
  for (int t = 0; t < trials; ++t) it->second(rng, t, tally);
  return {{"suite", suite},
          {"trials", trials},
          {"seed", seed},
          {"checks", tally.checks},
          {"failures", tally.failures},
          {"passed", tally.failures == 0},
          {"examples", tally.examples}};
}

}  // namespace detmax
