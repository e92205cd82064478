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

#ifndef DETMAX_CORE_MATROID_HPP_
#define DETMAX_CORE_MATROID_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "core/geometry.hpp"
#include "core/id_set.hpp"

namespace detmax {

struct CardinalityConstraint {
  int k = 0;
};

// Group labels index `caps`. Groups whose cap is zero carry no points once an
// instance has been normalized.
struct PartitionConstraint {
  std::vector<int> caps;
  std::unordered_map<PointId, int> group_of;

  int rank() const;
  // Number of groups with a positive cap.
  int num_parts() const;
  IdSet Members(int group) const;
};

struct LaminarSet {
  IdSet ids;
  int cap = 0;
};

// Validated laminar family. parent[i] is the smallest strict superset of
// sets[i] in the family, or -1 for maximal sets.
struct LaminarConstraint {
  std::vector<LaminarSet> sets;
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
  std::vector<int> roots;
  std::vector<std::string> warnings;
};

using Constraint =
    std::variant<CardinalityConstraint, PartitionConstraint, LaminarConstraint>;

std::string ConstraintTypeName(const Constraint& constraint);

// Reads group labels from `points`. Every point needs a label in
// [0, caps.size()); caps must be non-negative.
PartitionConstraint MakePartitionConstraint(std::vector<int> caps,
                                            const PointSet& points);

// Validates laminarity and positive caps, merges duplicate sets and repairs
// redundancy by dropping any set nested in another set whose cap is not
// larger. Repairs are reported in `warnings`. Ids must exist in `points`.
LaminarConstraint MakeLaminarConstraint(std::vector<LaminarSet> sets,
                                        const PointSet& points);

// Maximum number of family sets containing a single element.
int CoverNumber(const LaminarConstraint& constraint);

// min(C(n, k), UINT64_MAX).
std::uint64_t BinomialSaturating(std::uint64_t n, std::uint64_t k);

// Enumeration guard for brute-force oracles: 10^6 unless the
// DETMAX_ORACLE_CAP environment variable overrides it.
std::uint64_t OracleCap();

// A constraint bound to a ground set. The rank is the nominal rank of the
// constraint (sum of caps, plus unconstrained elements for laminar families);
// bases are the independent sets of exactly that size and may not exist.
class Matroid {
 public:
  Matroid(const Constraint& constraint, const PointSet& points);

  int rank() const { return rank_; }
  const IdSet& ground() const { return ground_; }

  // Throws kUnknownId for ids outside the ground set and kInvalidArgument for
  // repeated ids.
  bool IsIndependent(std::span<const PointId> s) const;
  bool IsBase(std::span<const PointId> s) const;

  // C(|ground|, rank): the number of candidates brute force would scan.
  std::uint64_t CandidateCount() const;

  // Visits bases in lexicographic order until `visit` returns false. Throws
  // kGuardExceeded when CandidateCount() exceeds OracleCap().
  void ForEachBase(const std::function<bool(const IdSet&)>& visit) const;
  std::vector<IdSet> EnumerateBases() const;

  // Same constraint and rank over a subset of the ground set.
  Matroid Restricted(std::span<const PointId> ids) const;

  // Incremental independence bookkeeping for greedy and exchange searches.
  class Tracker {
   public:
    explicit Tracker(const Matroid& matroid);
    bool CanAdd(PointId id) const;
    void Add(PointId id);
    void Remove(PointId id);
    std::size_t size() const { return size_; }

   private:
    const Matroid* matroid_;
    std::vector<int> counts_;
    std::size_t size_ = 0;
  };

 private:
  Matroid() = default;
  const std::vector<int>& CountersOf(PointId id) const;

  int rank_ = 0;
  IdSet ground_;
  std::vector<int> caps_;
  std::unordered_map<PointId, std::vector<int>> membership_;
};

}  // namespace detmax

#endif  // DETMAX_CORE_MATROID_HPP_
