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

#include "core/matroid.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>

#include "core/error.hpp"

namespace detmax {
namespace {

bool IsSubset(const IdSet& inner, const IdSet& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace

std::string ConstraintTypeName(const Constraint& constraint) {
  switch (constraint.index()) {
    case 0:
      return "cardinality";
    case 1:
      return "partition";
    default:
      return "laminar";
  }
}

int PartitionConstraint::rank() const {
  int k = 0;
  for (int c : caps) k += c;
  return k;
}

int PartitionConstraint::num_parts() const {
  return static_cast<int>(
      std::count_if(caps.begin(), caps.end(), [](int c) { return c > 0; }));
}

IdSet PartitionConstraint::Members(int group) const {
  IdSet out;
  for (const auto& [id, g] : group_of) {
    if (g == group) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PartitionConstraint MakePartitionConstraint(std::vector<int> caps,
                                            const PointSet& points) {
  PartitionConstraint out;
  for (int c : caps) {
    Require(c >= 0, ErrorCode::kInvalidArgument,
            "partition caps must be non-negative");
  }
  out.caps = std::move(caps);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const PointId id = points.ids()[i];
    const std::optional<int> g = points.group_at(i);
    Require(g.has_value(), ErrorCode::kInvalidArgument,
            "point " + std::to_string(id) +
                " has no group under a partition constraint");
    Require(*g >= 0 && *g < static_cast<int>(out.caps.size()),
            ErrorCode::kInvalidArgument,
            "point " + std::to_string(id) + " has group " + std::to_string(*g) +
                " outside the " + std::to_string(out.caps.size()) +
                " declared caps");
    out.group_of.emplace(id, *g);
  }
  return out;
}

LaminarConstraint MakeLaminarConstraint(std::vector<LaminarSet> sets,
                                        const PointSet& points) {
  LaminarConstraint out;
  for (LaminarSet& f : sets) {
    Require(!HasDuplicates(f.ids), ErrorCode::kInvalidArgument,
            "laminar set lists an id twice");
    f.ids = MakeIdSet(f.ids);
    Require(!f.ids.empty(), ErrorCode::kInvalidArgument,
            "laminar sets must be non-empty");
    Require(f.cap >= 1, ErrorCode::kInvalidArgument,
            "laminar caps must be >= 1");
    for (PointId id : f.ids) {
      Require(points.contains(id), ErrorCode::kUnknownId,
              "laminar set references unknown id " + std::to_string(id));
    }
  }
  const std::size_t m = sets.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const IdSet& x = sets[a].ids;
      const IdSet& y = sets[b].ids;
      Require(Disjoint(x, y) || IsSubset(x, y) || IsSubset(y, x),
              ErrorCode::kInvalidArgument,
              "family is not laminar: sets " + std::to_string(a) + " and " +
                  std::to_string(b) + " cross");
    }
  }

  // Drop duplicates (keeping the tighter cap) and redundant inner sets.
  std::vector<bool> dropped(m, false);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b || dropped[a] || dropped[b]) continue;
      const LaminarSet& inner = sets[a];
      const LaminarSet& outer = sets[b];
      if (inner.ids == outer.ids) {
        const std::size_t loser =
            (inner.cap > outer.cap || (inner.cap == outer.cap && a > b)) ? a : b;
        dropped[loser] = true;
        out.warnings.push_back("dropped duplicate laminar set " +
                               std::to_string(loser));
      } else if (inner.ids.size() < outer.ids.size() &&
                 IsSubset(inner.ids, outer.ids) && inner.cap >= outer.cap) {
        dropped[a] = true;
        out.warnings.push_back(
            "dropped redundant laminar set " + std::to_string(a) +
            " (cap " + std::to_string(inner.cap) + " nested in set " +
            std::to_string(b) + " with cap " + std::to_string(outer.cap) + ")");
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (!dropped[a]) out.sets.push_back(std::move(sets[a]));
  }

  const std::size_t kept = out.sets.size();
  out.parent.assign(kept, -1);
  out.children.assign(kept, {});
  for (std::size_t a = 0; a < kept; ++a) {
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    for (std::size_t b = 0; b < kept; ++b) {
      if (a == b) continue;
      const IdSet& outer = out.sets[b].ids;
      if (outer.size() > out.sets[a].ids.size() &&
          IsSubset(out.sets[a].ids, outer) && outer.size() < best_size) {
        best_size = outer.size();
        out.parent[a] = static_cast<int>(b);
      }
    }
  }
  for (std::size_t a = 0; a < kept; ++a) {
    if (out.parent[a] < 0) {
      out.roots.push_back(static_cast<int>(a));
    } else {
      out.children[static_cast<std::size_t>(out.parent[a])].push_back(
          static_cast<int>(a));
    }
  }
  return out;
}

int CoverNumber(const LaminarConstraint& constraint) {
  std::map<PointId, int> count;
  for (const LaminarSet& f : constraint.sets) {
    for (PointId id : f.ids) ++count[id];
  }
  int r = 0;
  for (const auto& [id, c] : count) r = std::max(r, c);
  return r;
}

std::uint64_t BinomialSaturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t OracleCap() {
  constexpr std::uint64_t kDefaultCap = 1'000'000;
  const char* env = std::getenv("DETMAX_ORACLE_CAP");
  if (env == nullptr || *env == '\0') return kDefaultCap;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') return kDefaultCap;
  return static_cast<std::uint64_t>(value);
}

Matroid::Matroid(const Constraint& constraint, const PointSet& points)
    : ground_(points.ids()) {
  for (PointId id : ground_) membership_[id];
  if (const auto* c = std::get_if<CardinalityConstraint>(&constraint)) {
    Require(c->k >= 0, ErrorCode::kInvalidArgument,
            "cardinality k must be non-negative");
    rank_ = c->k;
    caps_ = {c->k};
    for (PointId id : ground_) membership_[id] = {0};
  } else if (const auto* p = std::get_if<PartitionConstraint>(&constraint)) {
    rank_ = p->rank();
    caps_ = p->caps;
    for (PointId id : ground_) {
      auto it = p->group_of.find(id);
      Require(it != p->group_of.end(), ErrorCode::kUnknownId,
              "point " + std::to_string(id) + " has no partition group");
      membership_[id] = {it->second};
    }
  } else {
    const auto& l = std::get<LaminarConstraint>(constraint);
    caps_.reserve(l.sets.size());
    for (std::size_t f = 0; f < l.sets.size(); ++f) {
      caps_.push_back(l.sets[f].cap);
      for (PointId id : l.sets[f].ids) {
        auto it = membership_.find(id);
        if (it != membership_.end()) it->second.push_back(static_cast<int>(f));
      }
    }
    int free_elements = 0;
    for (PointId id : ground_) free_elements += membership_[id].empty() ? 1 : 0;
    rank_ = free_elements;
    for (int root : l.roots) rank_ += l.sets[static_cast<std::size_t>(root)].cap;
  }
}

const std::vector<int>& Matroid::CountersOf(PointId id) const {
  auto it = membership_.find(id);
  if (it == membership_.end()) {
    Fail(ErrorCode::kUnknownId,
         "id " + std::to_string(id) + " is not in the ground set");
  }
  return it->second;
}

bool Matroid::IsIndependent(std::span<const PointId> s) const {
  Require(!HasDuplicates(s), ErrorCode::kInvalidArgument,
          "independence query with repeated ids");
  std::vector<int> counts(caps_.size(), 0);
  bool ok = static_cast<int>(s.size()) <= rank_;
  for (PointId id : s) {
    for (int c : CountersOf(id)) {
      if (++counts[static_cast<std::size_t>(c)] > caps_[static_cast<std::size_t>(c)]) {
        ok = false;
      }
    }
  }
  return ok;
}

bool Matroid::IsBase(std::span<const PointId> s) const {
  const bool independent = IsIndependent(s);
  return independent && static_cast<int>(s.size()) == rank_;
}

std::uint64_t Matroid::CandidateCount() const {
  if (rank_ < 0) return 0;
  return BinomialSaturating(ground_.size(), static_cast<std::uint64_t>(rank_));
}

void Matroid::ForEachBase(
    const std::function<bool(const IdSet&)>& visit) const {
  const std::uint64_t cap = OracleCap();
  Require(CandidateCount() <= cap, ErrorCode::kGuardExceeded,
          "enumeration of C(" + std::to_string(ground_.size()) + ", " +
              std::to_string(rank_) + ") candidate sets exceeds the oracle cap " +
              std::to_string(cap));
  if (static_cast<std::size_t>(rank_) > ground_.size()) return;

  Tracker tracker(*this);
  IdSet current;
  current.reserve(static_cast<std::size_t>(rank_));
  const std::size_t need = static_cast<std::size_t>(rank_);
  bool stop = false;
  std::function<void(std::size_t)> dfs = [&](std::size_t pos) {
    if (current.size() == need) {
      stop = !visit(current);
      return;
    }
    const std::size_t missing = need - current.size();
    for (std::size_t i = pos; i + missing <= ground_.size() && !stop; ++i) {
      const PointId id = ground_[i];
      if (!tracker.CanAdd(id)) continue;
      tracker.Add(id);
      current.push_back(id);
      dfs(i + 1);
      current.pop_back();
      tracker.Remove(id);
    }
  };
  dfs(0);
}

std::vector<IdSet> Matroid::EnumerateBases() const {
  std::vector<IdSet> out;
  ForEachBase([&](const IdSet& base) {
    out.push_back(base);
    return true;
  });
  return out;
}

Matroid Matroid::Restricted(std::span<const PointId> ids) const {
  Matroid out;
  out.rank_ = rank_;
  out.caps_ = caps_;
  out.ground_ = MakeIdSet(ids);
  for (PointId id : out.ground_) out.membership_[id] = CountersOf(id);
  return out;
}

Matroid::Tracker::Tracker(const Matroid& matroid)
    : matroid_(&matroid), counts_(matroid.caps_.size(), 0) {}

bool Matroid::Tracker::CanAdd(PointId id) const {
  if (static_cast<int>(size_) >= matroid_->rank_) return false;
  for (int c : matroid_->CountersOf(id)) {
    const auto i = static_cast<std::size_t>(c);
    if (counts_[i] + 1 > matroid_->caps_[i]) return false;
  }
  return true;
}

void Matroid::Tracker::Add(PointId id) {
  for (int c : matroid_->CountersOf(id)) ++counts_[static_cast<std::size_t>(c)];
  ++size_;
}

void Matroid::Tracker::Remove(PointId id) {
  for (int c : matroid_->CountersOf(id)) --counts_[static_cast<std::size_t>(c)];
  --size_;
}

}  // namespace detmax
