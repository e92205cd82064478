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

// Composable coresets built from stacked local optima ("peeling"), one per
// partition class or laminar family node, and the exchange steps that show
// the union keeps a weighted objective from decreasing.

#ifndef DETMAX_CORE_CORESET_HPP_
#define DETMAX_CORE_CORESET_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/geometry.hpp"
#include "core/id_set.hpp"
#include "core/local_search.hpp"
#include "core/matroid.hpp"
#include "core/objective.hpp"

namespace detmax {

struct CoresetConfig {
  double zeta = kDefaultZeta;
  // Unset selects LowK when k <= d and HighK otherwise.
  std::optional<Regime> regime;
  bool ridge = false;
};

// Layers U_1, ..., U_m (m <= threshold) of successive local optima, each taken
// in the source minus all earlier layers.
struct PeelingCoreset {
  IdSet source;
  int threshold = 0;
  int ell = 1;
  double zeta = kDefaultZeta;
  std::vector<IdSet> layers;
  std::vector<bool> degenerate;

  IdSet ids() const;
};

PeelingCoreset BuildPeelingCoreset(const PointSet& points,
                                   std::span<const PointId> v, int threshold,
                                   int ell, const LocalSearchOptions& options);

// One node of the laminar recursion: the layers peeled inside family set
// `family`, the removed blocks D_i and the nodes built for the child sets
// those blocks touched.
struct LaminarNode {
  int family = -1;
  PeelingCoreset peel;
  std::vector<IdSet> removed;
  std::vector<int> children;  // indices into CoresetResult::laminar_nodes
};

struct CoresetResult {
  std::string constraint_type;
  Regime regime = Regime::kHighK;
  int ell = 1;
  double zeta = kDefaultZeta;
  bool ridge = false;
  IdSet source;
  IdSet ids;
  std::uint64_t declared_bound = 0;
  double approx_exponent = 0.0;

  // Cardinality and partition: one peeling per non-empty class.
  std::vector<int> part_groups;
  std::vector<PeelingCoreset> parts;
  // Laminar: recursion tree plus the elements outside every family set.
  std::vector<LaminarNode> laminar_nodes;
  std::vector<int> laminar_roots;
  IdSet free_ids;
  // Layers of a coreset restored from a document, which keeps no tree.
  std::vector<IdSet> flat_layers;

  // Every local-optimum layer in construction order.
  std::vector<IdSet> Layers() const;
};

struct RegimeChoice {
  Regime regime = Regime::kHighK;
  int ell = 1;
};

// Auto: LowK with ell = k when k <= d, else HighK with ell = d. A forced
// HighK uses ell = min(k, d); a forced LowK requires k <= d.
RegimeChoice ChooseRegime(int k, int d, std::optional<Regime> forced);

// Coreset of V (a subset of points) for the partition constraint. Classes
// without points in V contribute nothing.
CoresetResult BuildPartitionCoreset(const PointSet& points,
                                    std::span<const PointId> v,
                                    const PartitionConstraint& constraint,
                                    const CoresetConfig& config);

// Laminar recursion with ell = min(k, d), k the rank of the constraint on
// `points`. Declared bound (k ell)^max(r, 1), r the cover number.
CoresetResult BuildLaminarCoreset(const PointSet& points,
                                  std::span<const PointId> v,
                                  const LaminarConstraint& constraint,
                                  const CoresetConfig& config);

// Dispatch on the constraint type; cardinality is the one-class partition.
CoresetResult BuildCoreset(const PointSet& points, std::span<const PointId> v,
                           const Constraint& constraint,
                           const CoresetConfig& config);

// Union of coresets built on pairwise disjoint sources. Throws
// kOverlappingSources otherwise.
IdSet Compose(std::span<const CoresetResult> coresets);

// Lowest layer j of `peel` missing S, and the f in U_j maximizing
// MuTilde(S - e + f) (ties to the smallest id). Requires e in S, e in the
// source but outside every layer, and |S n source| <= threshold; violations
// throw kPrecondition.
PointId FindValuePreservingExchange(const PointSet& points,
                                    std::span<const PointId> s, PointId e,
                                    const PeelingCoreset& peel,
                                    const WeightProfile& weights);

// Exchange for a base S of a partition (or cardinality) constraint and
// h in (S n source) outside the coreset: an element of the same class's
// coreset that keeps the regime's weighted objective from decreasing.
PointId FindPartitionExchange(const PointSet& points,
                              std::span<const PointId> s, PointId h,
                              const CoresetResult& coreset,
                              const WeightProfile& weights);

// Exchange for a base S of the laminar constraint: descends into the child
// node whose removed block holds h, otherwise exchanges against the lowest
// layer whose removed block misses S.
PointId FindLaminarExchange(const PointSet& points, std::span<const PointId> s,
                            PointId h, const CoresetResult& coreset,
                            const LaminarConstraint& constraint,
                            const WeightProfile& weights);

}  // namespace detmax

#endif  // DETMAX_CORE_CORESET_HPP_
