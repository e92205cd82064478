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

#include "core/coreset.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "core/error.hpp"

namespace detmax {
namespace {

std::uint64_t SaturatingPow(std::uint64_t base, int exponent) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && out > kMax / base) return kMax;
    out *= base;
  }
  return out;
}

LocalSearchOptions SearchOptions(const CoresetConfig& config) {
  LocalSearchOptions options;
  options.zeta = config.zeta;
  options.ridge = config.ridge;
  return options;
}

IdSet CheckedSource(const PointSet& points, std::span<const PointId> v) {
  Require(!HasDuplicates(v), ErrorCode::kInvalidArgument,
          "coreset source contains duplicate ids");
  IdSet source = MakeIdSet(v);
  for (PointId id : source) {
    Require(points.contains(id), ErrorCode::kUnknownId,
            "coreset source references unknown id " + std::to_string(id));
  }
  return source;
}

// S as a sorted set, checked to be proper and to contain `e`.
IdSet CheckedBase(std::span<const PointId> s, PointId e) {
  Require(!HasDuplicates(s), ErrorCode::kInvalidArgument,
          "exchange set contains duplicate ids");
  IdSet set = MakeIdSet(s);
  Require(Contains(set, e), ErrorCode::kPrecondition,
          "exchanged element " + std::to_string(e) + " is not in S");
  return set;
}

// argmax over candidates of objective(S - e + f), ties to the smallest id.
template <typename Objective>
PointId BestReplacement(const IdSet& s, PointId e, const IdSet& candidates,
                        Objective objective) {
  PointId best = -1;
  double best_value = kNegInf;
  for (PointId f : candidates) {
    if (Contains(s, f)) continue;
    const double value = objective(Swap(s, e, f));
    if (best < 0 || value > best_value) {
      best = f;
      best_value = value;
    }
  }
  Require(best >= 0, ErrorCode::kPrecondition,
          "no replacement candidate outside S");
  return best;
}

int BuildLaminarNode(const PointSet& points, const IdSet& v, int family,
                     const LaminarConstraint& constraint, int ell,
                     const LocalSearchOptions& options,
                     std::vector<LaminarNode>& nodes) {
  const auto f = static_cast<std::size_t>(family);
  const IdSet& members = constraint.sets[f].ids;
  const std::vector<int>& kids = constraint.children[f];

  LaminarNode node;
  node.family = family;
  node.peel.source = Intersection(v, members);
  node.peel.threshold = constraint.sets[f].cap;
  node.peel.ell = ell;
  node.peel.zeta = options.zeta;

  std::vector<int> touched;
  IdSet current = node.peel.source;
  for (int i = 0; i < node.peel.threshold && !current.empty(); ++i) {
    const LocalOptResult layer = LocalOpt(points, current, ell, options);
    IdSet removed;
    for (PointId e : layer.set) {
      int child = -1;
      for (int c : kids) {
        if (Contains(constraint.sets[static_cast<std::size_t>(c)].ids, e)) {
          child = c;
          break;
        }
      }
      if (child < 0) {
        removed = Union(removed, IdSet{e});
      } else {
        removed =
            Union(removed, constraint.sets[static_cast<std::size_t>(child)].ids);
        if (std::find(touched.begin(), touched.end(), child) == touched.end()) {
          touched.push_back(child);
        }
      }
    }
    node.peel.layers.push_back(layer.set);
    node.peel.degenerate.push_back(layer.degenerate);
    node.removed.push_back(removed);
    current = Difference(current, removed);
  }

  const int index = static_cast<int>(nodes.size());
  nodes.push_back(std::move(node));
  std::vector<int> child_nodes;
  for (int child : touched) {
    const IdSet sub =
        Intersection(v, constraint.sets[static_cast<std::size_t>(child)].ids);
    child_nodes.push_back(
        BuildLaminarNode(points, sub, child, constraint, ell, options, nodes));
  }
  nodes[static_cast<std::size_t>(index)].children = std::move(child_nodes);
  return index;
}

IdSet LaminarNodeIds(const std::vector<LaminarNode>& nodes, int index) {
  const LaminarNode& node = nodes[static_cast<std::size_t>(index)];
  IdSet out = node.peel.ids();
  for (int c : node.children) out = Union(out, LaminarNodeIds(nodes, c));
  return out;
}

}  // namespace

IdSet PeelingCoreset::ids() const {
  IdSet out;
  for (const IdSet& layer : layers) out = Union(out, layer);
  return out;
}

PeelingCoreset BuildPeelingCoreset(const PointSet& points,
                                   std::span<const PointId> v, int threshold,
                                   int ell, const LocalSearchOptions& options) {
  Require(threshold >= 1, ErrorCode::kInvalidArgument,
          "peeling threshold must be >= 1");
  PeelingCoreset peel;
  peel.source = CheckedSource(points, v);
  peel.threshold = threshold;
  peel.ell = ell;
  peel.zeta = options.zeta;
  IdSet current = peel.source;
  for (int i = 0; i < threshold && !current.empty(); ++i) {
    LocalOptResult layer = LocalOpt(points, current, ell, options);
    current = Difference(current, layer.set);
    peel.degenerate.push_back(layer.degenerate);
    peel.layers.push_back(std::move(layer.set));
  }
  return peel;
}

std::vector<IdSet> CoresetResult::Layers() const {
  std::vector<IdSet> out = flat_layers;
  for (const PeelingCoreset& part : parts) {
    out.insert(out.end(), part.layers.begin(), part.layers.end());
  }
  for (const LaminarNode& node : laminar_nodes) {
    out.insert(out.end(), node.peel.layers.begin(), node.peel.layers.end());
  }
  return out;
}

RegimeChoice ChooseRegime(int k, int d, std::optional<Regime> forced) {
  Require(k >= 1, ErrorCode::kInvalidArgument, "constraint rank must be >= 1");
  if (!forced) {
    if (k <= d) return {Regime::kLowK, k};
    return {Regime::kHighK, d};
  }
  if (*forced == Regime::kLowK) {
    Require(k <= d, ErrorCode::kInvalidArgument,
            "lowk regime requires k <= d (k = " + std::to_string(k) +
                ", d = " + std::to_string(d) + ")");
    return {Regime::kLowK, k};
  }
  return {Regime::kHighK, std::min(k, d)};
}

CoresetResult BuildPartitionCoreset(const PointSet& points,
                                    std::span<const PointId> v,
                                    const PartitionConstraint& constraint,
                                    const CoresetConfig& config) {
  const int k = constraint.rank();
  const RegimeChoice choice = ChooseRegime(k, points.dim(), config.regime);
  const LocalSearchOptions options = SearchOptions(config);

  CoresetResult result;
  result.constraint_type = "partition";
  result.regime = choice.regime;
  result.ell = choice.ell;
  result.zeta = config.zeta;
  result.ridge = config.ridge;
  result.source = CheckedSource(points, v);
  result.approx_exponent = ApproximationExponent(choice.ell, config.zeta);

  std::map<int, IdSet> classes;
  for (PointId id : result.source) {
    auto it = constraint.group_of.find(id);
    Require(it != constraint.group_of.end(), ErrorCode::kUnknownId,
            "point " + std::to_string(id) + " has no partition group");
    classes[it->second].push_back(id);
  }
  for (const auto& [group, members] : classes) {
    const int cap = constraint.caps[static_cast<std::size_t>(group)];
    if (cap == 0) continue;
    const int threshold = choice.regime == Regime::kLowK ? 1 : cap;
    result.part_groups.push_back(group);
    result.parts.push_back(
        BuildPeelingCoreset(points, members, threshold, choice.ell, options));
    result.ids = Union(result.ids, result.parts.back().ids());
  }
  const auto ell = static_cast<std::uint64_t>(choice.ell);
  result.declared_bound =
      choice.regime == Regime::kLowK
          ? static_cast<std::uint64_t>(constraint.num_parts()) * ell
          : static_cast<std::uint64_t>(k) * ell;
  return result;
}

CoresetResult BuildLaminarCoreset(const PointSet& points,
                                  std::span<const PointId> v,
                                  const LaminarConstraint& constraint,
                                  const CoresetConfig& config) {
  Require(!config.regime || *config.regime == Regime::kHighK,
          ErrorCode::kInvalidArgument,
          "laminar coresets support only the highk regime");
  const int k = Matroid(constraint, points).rank();
  const RegimeChoice choice =
      ChooseRegime(k, points.dim(), Regime::kHighK);
  const LocalSearchOptions options = SearchOptions(config);

  CoresetResult result;
  result.constraint_type = "laminar";
  result.regime = choice.regime;
  result.ell = choice.ell;
  result.zeta = config.zeta;
  result.ridge = config.ridge;
  result.source = CheckedSource(points, v);
  result.approx_exponent = ApproximationExponent(choice.ell, config.zeta);

  IdSet covered;
  for (int root : constraint.roots) {
    const IdSet& members = constraint.sets[static_cast<std::size_t>(root)].ids;
    covered = Union(covered, members);
    const IdSet sub = Intersection(result.source, members);
    const int node = BuildLaminarNode(points, sub, root, constraint,
                                      choice.ell, options, result.laminar_nodes);
    result.laminar_roots.push_back(node);
    result.ids = Union(result.ids, LaminarNodeIds(result.laminar_nodes, node));
  }
  result.free_ids = Difference(result.source, covered);
  result.ids = Union(result.ids, result.free_ids);

  const int r = std::max(CoverNumber(constraint), 1);
  result.declared_bound = SaturatingPow(
      static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(choice.ell),
      r);
  return result;
}

CoresetResult BuildCoreset(const PointSet& points, std::span<const PointId> v,
                           const Constraint& constraint,
                           const CoresetConfig& config) {
  if (const auto* c = std::get_if<CardinalityConstraint>(&constraint)) {
    PartitionConstraint single;
    single.caps = {c->k};
    for (PointId id : points.ids()) single.group_of.emplace(id, 0);
    CoresetResult result = BuildPartitionCoreset(points, v, single, config);
    result.constraint_type = "cardinality";
    return result;
  }
  if (const auto* p = std::get_if<PartitionConstraint>(&constraint)) {
    return BuildPartitionCoreset(points, v, *p, config);
  }
  return BuildLaminarCoreset(points, v, std::get<LaminarConstraint>(constraint),
                             config);
}

IdSet Compose(std::span<const CoresetResult> coresets) {
  IdSet seen;
  IdSet out;
  for (const CoresetResult& c : coresets) {
    Require(Disjoint(seen, c.source), ErrorCode::kOverlappingSources,
            "coresets were built from overlapping sources");
    seen = Union(seen, c.source);
    out = Union(out, c.ids);
  }
  return out;
}

PointId FindValuePreservingExchange(const PointSet& points,
                                    std::span<const PointId> s, PointId e,
                                    const PeelingCoreset& peel,
                                    const WeightProfile& weights) {
  const IdSet set = CheckedBase(s, e);
  Require(Contains(peel.source, e), ErrorCode::kPrecondition,
          "exchanged element is not in the coreset source");
  const IdSet u = peel.ids();
  Require(!Contains(u, e), ErrorCode::kPrecondition,
          "exchanged element already lies in the coreset");
  const std::size_t inside = Intersection(set, peel.source).size();
  Require(inside <= static_cast<std::size_t>(peel.threshold),
          ErrorCode::kPrecondition,
          "|S n V| = " + std::to_string(inside) + " exceeds the threshold " +
              std::to_string(peel.threshold));
  for (const IdSet& layer : peel.layers) {
    if (!Disjoint(set, layer)) continue;
    return BestReplacement(set, e, layer, [&](const IdSet& t) {
      return MuTilde(points, t, weights);
    });
  }
  Fail(ErrorCode::kPrecondition, "every layer intersects S");
}

PointId FindPartitionExchange(const PointSet& points,
                              std::span<const PointId> s, PointId h,
                              const CoresetResult& coreset,
                              const WeightProfile& weights) {
  const IdSet set = CheckedBase(s, h);
  Require(!Contains(coreset.ids, h), ErrorCode::kPrecondition,
          "exchanged element already lies in the coreset");
  for (const PeelingCoreset& part : coreset.parts) {
    if (!Contains(part.source, h)) continue;
    if (coreset.regime == Regime::kHighK) {
      return FindValuePreservingExchange(points, set, h, part, weights);
    }
    return BestReplacement(set, h, part.ids(), [&](const IdSet& t) {
      return MuHatLowDim(points, t, weights);
    });
  }
  Fail(ErrorCode::kPrecondition, "exchanged element is not in the source");
}

PointId FindLaminarExchange(const PointSet& points, std::span<const PointId> s,
                            PointId h, const CoresetResult& coreset,
                            const LaminarConstraint& constraint,
                            const WeightProfile& weights) {
  const IdSet set = CheckedBase(s, h);
  Require(Contains(coreset.source, h), ErrorCode::kPrecondition,
          "exchanged element is not in the coreset source");
  Require(!Contains(coreset.ids, h), ErrorCode::kPrecondition,
          "exchanged element already lies in the coreset");

  int node_index = -1;
  for (int root : coreset.laminar_roots) {
    const LaminarNode& node =
        coreset.laminar_nodes[static_cast<std::size_t>(root)];
    if (Contains(node.peel.source, h)) node_index = root;
  }
  Require(node_index >= 0, ErrorCode::kPrecondition,
          "exchanged element lies in no family node");

  while (true) {
    const LaminarNode& node =
        coreset.laminar_nodes[static_cast<std::size_t>(node_index)];
    int next = -1;
    for (const IdSet& block : node.removed) {
      if (!Contains(block, h)) continue;
      for (int c : node.children) {
        const LaminarNode& child =
            coreset.laminar_nodes[static_cast<std::size_t>(c)];
        if (Contains(constraint.sets[static_cast<std::size_t>(child.family)].ids,
                     h)) {
          next = c;
        }
      }
      Require(next >= 0, ErrorCode::kInternal,
              "removed block without a matching child node");
      break;
    }
    if (next >= 0) {
      node_index = next;
      continue;
    }
    for (std::size_t i = 0; i < node.removed.size(); ++i) {
      if (!Disjoint(set, node.removed[i])) continue;
      return BestReplacement(set, h, node.peel.layers[i], [&](const IdSet& t) {
        return MuTilde(points, t, weights);
      });
    }
    Fail(ErrorCode::kPrecondition, "every removed block intersects S");
  }
}

}  // namespace detmax
