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


#include <cstdlib>
#include <random>

#include "doctest.h"

#include "core/error.hpp"
#include "core/instances.hpp"
#include "core/matroid.hpp"
#include "core/solver.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace detmax;
using testutil::Grouped;
using testutil::Points;

namespace {

PointSet Line(int n) {
  std::vector<PointRecord> records;
  for (int i = 0; i < n; ++i) {
    records.push_back({i, i % 2, {1.0 + i, static_cast<double>(i * i % 5)}});
  }
  return PointSet(2, records);
}

}  // namespace

TEST_CASE("independence and bases") {
  const PointSet p = Grouped(2, {0, 0, 1, 1}, {{1, 0}, {0, 1}, {1, 1}, {2, 1}});
  const Constraint part = MakePartitionConstraint({1, 1}, p);
  const Matroid m(part, p);
  CHECK(m.rank() == 2);
  CHECK(m.IsIndependent(std::vector<PointId>{}));
  CHECK_FALSE(m.IsIndependent(std::vector<PointId>{0, 1}));
  CHECK(m.IsBase(std::vector<PointId>{0, 2}));
  CHECK_FALSE(m.IsBase(std::vector<PointId>{0}));
  CHECK_FALSE(m.IsBase(std::vector<PointId>{2, 3}));
  CHECK_THROWS_AS(m.IsIndependent(std::vector<PointId>{9}), Error);

  const PointSet q = Points(2, {{1, 0}, {0, 1}, {1, 1}, {1, 2}});
  const Constraint lam = MakeLaminarConstraint({{{0, 1, 2}, 2}}, q);
  const Matroid lm(lam, q);
  CHECK_FALSE(lm.IsIndependent(std::vector<PointId>{0, 1, 2}));
  CHECK(lm.IsIndependent(std::vector<PointId>{0, 1, 3}));
}

TEST_CASE("base enumeration small cases") {
  const PointSet p = Points(2, {{1, 0}, {0, 1}, {1, 1}, {2, 1}});
  CHECK(Matroid(CardinalityConstraint{2}, p).EnumerateBases().size() == 6);

  const PointSet g = Grouped(2, {0, 0, 1, 1}, {{1, 0}, {0, 1}, {1, 1}, {2, 1}});
  const auto bases =
      Matroid(MakePartitionConstraint({1, 1}, g), g).EnumerateBases();
  REQUIRE(bases.size() == 4);
  CHECK(bases[0] == IdSet{0, 2});
  CHECK(bases[3] == IdSet{1, 3});

  const auto lam =
      Matroid(MakeLaminarConstraint({{{0, 1, 2, 3}, 2}}, p), p).EnumerateBases();
  CHECK(lam == Matroid(CardinalityConstraint{2}, p).EnumerateBases());
}

TEST_CASE("enumeration agrees with filtering every subset") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    RandomSpec spec;
    spec.seed = rng();
    spec.d = 2;
    spec.n = 6 + static_cast<int>(rng() % 9);
    switch (trial % 3) {
      case 0:
        spec.constraint = "partition";
        spec.caps = {1 + static_cast<int>(rng() % 2), 1, 2};
        break;
      case 1:
        spec.constraint = "laminar";
        spec.laminar_shape = "chain";
        spec.caps = {1, 3};
        break;
      default:
        spec.constraint = "laminar";
        spec.laminar_shape = "pairs";
        spec.k = 3;
        break;
    }
    const Instance inst = RandomInstance(spec);
    const Matroid m(inst.constraint, inst.points);
    std::vector<IdSet> expected;
    oracle::ForEachSubset<PointId>(
        inst.points.ids(), static_cast<std::size_t>(oracle::Rank(inst.constraint, inst.points)),
        [&](const std::vector<PointId>& s) {
          if (oracle::Independent(inst.constraint, inst.points, s)) {
            expected.push_back(s);
          }
        });
    CHECK(m.EnumerateBases() == expected);
  }
}

TEST_CASE("cover number") {
  const PointSet p = Line(8);
  CHECK(CoverNumber(MakeLaminarConstraint(
            {{{0, 1, 2}, 1}, {{3, 4, 5}, 2}}, p)) == 1);
  CHECK(CoverNumber(
            MakeLaminarConstraint({{{0, 1}, 1}, {{0, 1, 2, 3}, 2}}, p)) == 2);
  RandomSpec spec;
  spec.n = 8;
  spec.d = 2;
  spec.constraint = "laminar";
  spec.laminar_shape = "pairs";
  spec.k = 3;
  const Instance pairs = RandomInstance(spec);
  const auto& lam = std::get<LaminarConstraint>(pairs.constraint);
  CHECK(CoverNumber(lam) == 2);
  CHECK(CoverNumber(lam) <= Matroid(lam, pairs.points).rank());
}

TEST_CASE("laminar validation") {
  const PointSet p = Line(6);
  CHECK_THROWS_AS(
      MakeLaminarConstraint({{{0, 1, 2}, 1}, {{2, 3}, 1}}, p), Error);
  // Redundant inner set dropped with a warning.
  const LaminarConstraint repaired =
      MakeLaminarConstraint({{{0, 1}, 2}, {{0, 1, 2}, 2}}, p);
  CHECK(repaired.sets.size() == 1);
  CHECK_FALSE(repaired.warnings.empty());
  CHECK_THROWS_AS(MakeLaminarConstraint({{{0, 9}, 1}}, p), Error);
}

TEST_CASE("enumeration guard") {
  const PointSet p = Line(30);
  const Matroid m(CardinalityConstraint{10}, p);
  try {
    m.EnumerateBases();
    FAIL("expected the guard to trip");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kGuardExceeded);
  }
  setenv("DETMAX_ORACLE_CAP", "10", 1);
  CHECK(OracleCap() == 10);
  CHECK_THROWS_AS(Matroid(CardinalityConstraint{2}, Line(6)).EnumerateBases(),
                  Error);
  unsetenv("DETMAX_ORACLE_CAP");
  CHECK(OracleCap() == 1'000'000);
}

TEST_CASE("brute force small cases") {
  const PointSet p = Points(2, {{1, 0}, {0, 1}});
  const SolveResult r = BruteForceOpt(p, Constraint{CardinalityConstraint{2}});
  CHECK(r.feasible);
  CHECK(r.log_value == doctest::Approx(0.0));

  for (double big_m : {10.0, 100.0}) {
    const Instance lb = LowDimLowerBound({1, 1}, 2, big_m).Combined();
    const SolveResult opt = BruteForceOpt(lb.points, lb.constraint);
    CHECK(opt.log_value == doctest::Approx(2 * std::log(big_m)));
  }

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    RandomSpec spec;
    spec.n = 8;
    spec.d = 2;
    spec.k = 3;
    spec.seed = rng();
    spec.integer_grid = trial % 2 == 0;
    const Instance inst = RandomInstance(spec);
    const SolveResult got = BruteForceOpt(inst.points, inst.constraint);
    const oracle::Opt want =
        oracle::BruteOpt(inst.points, inst.constraint, inst.points.ids());
    CHECK(oracle::SameLog(got.log_value, want.value, 1e-9));
    CHECK(got.feasible);
  }
}

TEST_CASE("greedy and coreset solving") {
  const PointSet p = Points(3, {{3, 0, 0}, {0, 2, 0}, {0, 0, 5}, {1, 1, 1}});
  const SolveResult g = GreedyConstrained(p, Constraint{CardinalityConstraint{3}});
  CHECK(g.feasible);
  CHECK(g.set == IdSet{0, 1, 2});

  const PointSet q = Grouped(2, {0, 0, 0}, {{1, 0}, {0, 1}, {1, 1}});
  const SolveResult none = GreedyConstrained(q, MakePartitionConstraint({1, 1}, q));
  CHECK_FALSE(none.feasible);
  CHECK(none.log_value == oracle::kNegInf);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    RandomSpec spec;
    spec.n = 10;
    spec.d = 2;
    spec.constraint = "partition";
    spec.caps = {1, 2};
    spec.k = 3;
    spec.seed = rng();
    const Instance inst = RandomInstance(spec);
    const Matroid m(inst.constraint, inst.points);
    const SolveResult opt = BruteForceOpt(inst.points, m);
    const SolveResult gr = GreedyConstrained(inst.points, m);
    CHECK(gr.feasible);
    CHECK(m.IsBase(gr.set));
    CHECK(gr.log_value <= opt.log_value + 1e-12);
    const SolveResult refined = RefineBySwaps(inst.points, m, gr, 1.01);
    CHECK(m.IsBase(refined.set));
    CHECK(refined.log_value >= gr.log_value - 1e-12);

    const SolveResult full =
        SolveOnCoreset(inst.points, inst.constraint, inst.points.ids());
    CHECK(full.set == opt.set);
    // Monotone under ground-set growth.
    const IdSet half(inst.points.ids().begin(), inst.points.ids().begin() + 7);
    const SolveResult sub = SolveOnCoreset(inst.points, inst.constraint, half);
    if (sub.feasible) CHECK(sub.log_value <= opt.log_value + 1e-12);
  }
  const PointSet e = Points(2, {{1, 0}, {0, 1}});
  const SolveResult empty = SolveOnCoreset(e, Constraint{CardinalityConstraint{1}},
                                           std::vector<PointId>{});
  CHECK_FALSE(empty.feasible);
}

TEST_CASE("solve method names round trip") {
  for (SolveMethod m :
       {SolveMethod::kBruteForce, SolveMethod::kGreedy, SolveMethod::kLocalSearch}) {
    CHECK(ParseSolveMethod(SolveMethodName(m)) == m);
  }
  CHECK_THROWS_AS(ParseSolveMethod("magic"), Error);
}
