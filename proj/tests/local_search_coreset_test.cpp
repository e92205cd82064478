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


#include <cmath>
#include <random>

#include "doctest.h"

#include "core/coreset.hpp"
#include "core/error.hpp"
#include "core/instances.hpp"
#include "core/local_search.hpp"
#include "core/objective.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace detmax;
using testutil::Grouped;
using testutil::Points;

namespace {

Instance Gaussian(int n, int d, std::uint64_t seed) {
  RandomSpec spec;
  spec.n = n;
  spec.d = d;
  spec.k = 1;
  spec.seed = seed;
  return RandomInstance(spec);
}

// Exhaustive check that no swap beats `set` by more than zeta.
bool SwapOracle(const PointSet& p, const IdSet& v, const IdSet& set,
                double zeta) {
  const double base = oracle::LogVolumeLu(p, set);
  for (PointId out : set) {
    for (PointId in : v) {
      if (Contains(set, in)) continue;
      if (oracle::LogVolumeLu(p, Swap(set, out, in)) >
          base + std::log(zeta) + 1e-9) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("greedy init small cases") {
  const PointSet basis = Points(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(GreedyInit(basis, basis.ids(), 2) == IdSet{0, 1});
  const PointSet p = Points(2, {{1, 0}, {0, 3}, {0, 1}});
  CHECK(GreedyInit(p, p.ids(), 2) == IdSet{0, 1});
  CHECK(GreedyInit(p, std::vector<PointId>{2}, 2) == IdSet{2});
}

TEST_CASE("local opt small cases") {
  const PointSet basis = Points(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const LocalOptResult b = LocalOpt(basis, basis.ids(), 3);
  CHECK(b.set == basis.ids());
  CHECK(b.swap_count == 0);
  CHECK(b.value == doctest::Approx(0.0));

  // {e1, e2} and {e2, e1 + 0.1 e2} have the same volume; either is a
  // 1.01-local optimum of value 0.
  const PointSet p = Points(2, {{1, 0}, {0, 1}, {1, 0.1}});
  const LocalOptResult r = LocalOpt(p, p.ids(), 2);
  CHECK(r.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(SwapOracle(p, p.ids(), r.set, 1.01));
  CHECK_FALSE(VerifyLocalOpt(p, p.ids(), r.set, 1.01).has_value());

  const PointSet line = Points(2, {{1, 1}, {2, 2}, {-1, -1}});
  CHECK(LocalOpt(line, line.ids(), 2).degenerate);

  CHECK_THROWS_AS(LocalOpt(p, p.ids(), 2, {1.0}), Error);
  CHECK_THROWS_AS(LocalOpt(p, p.ids(), 3), Error);
  const LocalOptResult small = LocalOpt(p, std::vector<PointId>{1}, 2);
  CHECK(small.set == IdSet{1});
}

TEST_CASE("verify local opt reports the best violating swap") {
  const PointSet p = Points(2, {{10, 0}, {9, 1}, {0, 3}, {3, 0.5}});
  const auto v = VerifyLocalOpt(p, p.ids(), IdSet{0, 1}, 1.01);
  REQUIRE(v.has_value());
  CHECK(v->first == 1);
  CHECK(v->second == 2);
  CHECK_FALSE(VerifyLocalOpt(p, std::vector<PointId>{0, 1}, IdSet{0, 1}, 1.01)
                  .has_value());

  // Search seeds for an instance where greedy alone is not a local optimum.
  std::mt19937_64 rng(17);
  bool found = false;
  for (int trial = 0; trial < 500 && !found; ++trial) {
    const Instance inst = Gaussian(8, 3, rng());
    const IdSet greedy = GreedyInit(inst.points, inst.points.ids(), 3);
    const auto swap = VerifyLocalOpt(inst.points, inst.points.ids(), greedy, 1.01);
    if (!swap) continue;
    found = true;
    CHECK_FALSE(SwapOracle(inst.points, inst.points.ids(), greedy, 1.01));
    const double before = oracle::LogVolumeLu(inst.points, greedy);
    const double after =
        oracle::LogVolumeLu(inst.points, Swap(greedy, swap->first, swap->second));
    CHECK(after > before + std::log(1.01));
  }
  CHECK(found);
}

TEST_CASE("local opt properties on random instances") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 120; ++trial) {
    const int d = 2 + trial % 3;
    const int n = 4 + static_cast<int>(rng() % 8);
    const Instance inst = Gaussian(n, d, rng());
    const int ell = 1 + static_cast<int>(rng() % static_cast<unsigned>(d));
    const LocalOptResult r = LocalOpt(inst.points, inst.points.ids(), ell);
    REQUIRE_FALSE(r.degenerate);
    CHECK(SwapOracle(inst.points, inst.points.ids(), r.set, r.zeta));
    for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
      CHECK(r.trajectory[i] >= r.trajectory[i - 1] + std::log(r.zeta) - 1e-9);
    }
    const LocalOptResult again = LocalOpt(inst.points, r.set, ell);
    CHECK(again.swap_count == 0);
    const LocalOptResult ridge =
        LocalOpt(inst.points, inst.points.ids(), ell, {1.01, true});
    CHECK(SwapOracle(inst.points, inst.points.ids(), ridge.set, 1.01));
  }
}

TEST_CASE("peeling coreset") {
  const Instance inst = Gaussian(10, 2, 4);
  const PeelingCoreset peel =
      BuildPeelingCoreset(inst.points, inst.points.ids(), 3, 2, {});
  CHECK(peel.layers.size() == 3);
  CHECK(peel.ids().size() <= 6);
  for (std::size_t i = 0; i < peel.layers.size(); ++i) {
    for (std::size_t j = i + 1; j < peel.layers.size(); ++j) {
      CHECK(Disjoint(peel.layers[i], peel.layers[j]));
    }
  }
  const PeelingCoreset small =
      BuildPeelingCoreset(inst.points, std::vector<PointId>{1, 2}, 4, 2, {});
  REQUIRE(small.layers.size() == 1);
  CHECK(small.layers[0] == IdSet{1, 2});

  // Four copies of the basis pair: every layer is a copy of {e1, e2}.
  const PointSet copies =
      Points(2, {{1, 0}, {0, 1}, {1, 0}, {0, 1}, {1, 0}, {0, 1}, {1, 0}, {0, 1}});
  const PeelingCoreset cp = BuildPeelingCoreset(copies, copies.ids(), 2, 2, {});
  REQUIRE(cp.layers.size() == 2);
  CHECK(Disjoint(cp.layers[0], cp.layers[1]));
  for (const IdSet& layer : cp.layers) {
    CHECK(LogVolume(copies, layer) == doctest::Approx(0.0));
  }
}

TEST_CASE("partition coreset sizes and regimes") {
  RandomSpec spec;
  spec.n = 20;
  spec.d = 3;
  spec.constraint = "partition";
  spec.caps = {1, 1};
  spec.k = 2;
  const Instance low = RandomInstance(spec);
  const CoresetResult a =
      BuildCoreset(low.points, low.points.ids(), low.constraint, {});
  CHECK(a.regime == Regime::kLowK);
  CHECK(a.ell == 2);
  CHECK(a.declared_bound == 4);
  CHECK(a.ids.size() <= 4);

  spec.d = 2;
  spec.caps = {2, 1, 1};
  spec.k = 4;
  const Instance high = RandomInstance(spec);
  const CoresetResult b =
      BuildCoreset(high.points, high.points.ids(), high.constraint, {});
  CHECK(b.regime == Regime::kHighK);
  CHECK(b.ell == 2);
  CHECK(b.declared_bound == 8);
  CHECK(b.ids.size() <= 8);

  // A part with no points in V contributes nothing.
  IdSet v;
  for (PointId id : high.points.ids()) {
    if (high.points.group(id) != 1) v.push_back(id);
  }
  const CoresetResult c = BuildCoreset(high.points, v, high.constraint, {});
  CHECK(c.parts.size() == 2);
  for (PointId id : c.ids) CHECK(high.points.group(id) != 1);

  CoresetConfig forced;
  forced.regime = Regime::kLowK;
  CHECK_THROWS_AS(
      BuildCoreset(high.points, high.points.ids(), high.constraint, forced),
      Error);
}

TEST_CASE("laminar coreset") {
  RandomSpec spec;
  spec.n = 12;
  spec.d = 2;
  spec.constraint = "laminar";
  spec.laminar_shape = "chain";
  spec.caps = {1, 3};
  spec.seed = 7;
  const Instance chain = RandomInstance(spec);
  const auto& lam = std::get<LaminarConstraint>(chain.constraint);
  const CoresetResult c =
      BuildCoreset(chain.points, chain.points.ids(), chain.constraint, {});
  CHECK(CoverNumber(lam) == 2);
  CHECK(c.declared_bound == 36);
  CHECK(c.ids.size() <= c.declared_bound);
  CHECK(c.constraint_type == "laminar");

  // A single family set equal to the ground set peels like the plain
  // peeling coreset.
  const Instance flat = Gaussian(10, 2, 9);
  const Constraint single =
      MakeLaminarConstraint({{flat.points.ids(), 3}}, flat.points);
  const CoresetResult s =
      BuildCoreset(flat.points, flat.points.ids(), single, {});
  const PeelingCoreset peel =
      BuildPeelingCoreset(flat.points, flat.points.ids(), 3, 2, {});
  CHECK(s.ids == peel.ids());

  CoresetConfig lowk;
  lowk.regime = Regime::kLowK;
  CHECK_THROWS_AS(BuildCoreset(flat.points, flat.points.ids(), single, lowk),
                  Error);
}

TEST_CASE("compose") {
  const Instance inst = Gaussian(16, 2, 5);
  const Constraint card = CardinalityConstraint{3};
  const IdSet a(inst.points.ids().begin(), inst.points.ids().begin() + 8);
  const IdSet b(inst.points.ids().begin() + 8, inst.points.ids().end());
  const CoresetResult ca = BuildCoreset(inst.points, a, card, {});
  const CoresetResult cb = BuildCoreset(inst.points, b, card, {});
  CHECK(Compose(std::vector<CoresetResult>{ca}) == ca.ids);
  CHECK(Compose(std::vector<CoresetResult>{ca, cb}).size() ==
        ca.ids.size() + cb.ids.size());
  try {
    Compose(std::vector<CoresetResult>{ca, ca});
    FAIL("overlap accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOverlappingSources);
  }
}

TEST_CASE("value preserving exchange") {
  std::mt19937_64 rng(13);
  int exercised = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = Gaussian(8, 2, rng());
    const int threshold = 2;
    const PeelingCoreset peel =
        BuildPeelingCoreset(inst.points, inst.points.ids(), threshold, 2, {});
    WeightProfile w;
    w.coreset_ids = peel.ids();
    w.ell = 2;
    w.zeta = peel.zeta;
    const IdSet outside = Difference(inst.points.ids(), peel.ids());
    for (PointId e : outside) {
      for (PointId other : inst.points.ids()) {
        if (other == e) continue;
        const IdSet s = MakeIdSet(std::vector<PointId>{e, other});
        const PointId f =
            FindValuePreservingExchange(inst.points, s, e, peel, w);
        CHECK(Contains(peel.ids(), f));
        CHECK_FALSE(Contains(s, f));
        const IdSet next = Swap(s, e, f);
        CHECK(next.size() == s.size());
        CHECK(MuTilde(inst.points, next, w) >=
              MuTilde(inst.points, s, w) - 1e-9);
        if (Disjoint(s, peel.layers[0])) CHECK(Contains(peel.layers[0], f));
        ++exercised;
      }
    }
  }
  CHECK(exercised > 100);

  const Instance inst = Gaussian(8, 2, 1);
  const PeelingCoreset peel =
      BuildPeelingCoreset(inst.points, inst.points.ids(), 1, 2, {});
  WeightProfile w;
  w.coreset_ids = peel.ids();
  w.ell = 2;
  const IdSet outside = Difference(inst.points.ids(), peel.ids());
  REQUIRE(outside.size() >= 2);
  // |S n V| = 2 > threshold 1.
  CHECK_THROWS_AS(FindValuePreservingExchange(
                      inst.points, IdSet{outside[0], outside[1]}, outside[0],
                      peel, w),
                  Error);
  CHECK_THROWS_AS(FindValuePreservingExchange(inst.points, peel.layers[0],
                                              peel.layers[0][0], peel, w),
                  Error);
}
