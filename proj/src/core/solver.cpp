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

#include "core/solver.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/local_search.hpp"

namespace detmax {

const char* SolveMethodName(SolveMethod method) {
  switch (method) {
    case SolveMethod::kBruteForce:
      return "brute";
    case SolveMethod::kGreedy:
      return "greedy";
    case SolveMethod::kLocalSearch:
      return "local";
  }
  return "brute";
}

SolveMethod ParseSolveMethod(const std::string& name) {
  if (name == "brute") return SolveMethod::kBruteForce;
  if (name == "greedy") return SolveMethod::kGreedy;
  if (name == "local") return SolveMethod::kLocalSearch;
  Fail(ErrorCode::kInvalidArgument, "unknown solve method '" + name + "'");
}

SolveResult BruteForceOpt(const PointSet& points, const Matroid& matroid) {
  SolveResult best;
  best.method = SolveMethod::kBruteForce;
  matroid.ForEachBase([&](const IdSet& base) {
    const double value = LogVolume(points, base);
    if (!best.feasible || value > best.log_value) {
      best.set = base;
      best.log_value = value;
      best.feasible = true;
    }
    return true;
  });
  return best;
}

SolveResult BruteForceOpt(const PointSet& points,
                          const Constraint& constraint) {
  return BruteForceOpt(points, Matroid(constraint, points));
}

SolveResult GreedyConstrained(const PointSet& points, const Matroid& matroid) {
  SolveResult result;
  result.method = SolveMethod::kGreedy;
  Matroid::Tracker tracker(matroid);
  const auto rank = static_cast<std::size_t>(matroid.rank());
  while (result.set.size() < rank) {
    PointId best = -1;
    double best_value = kNegInf;
    for (PointId f : matroid.ground()) {
      if (Contains(result.set, f) || !tracker.CanAdd(f)) continue;
      IdSet grown = result.set;
      grown.insert(std::upper_bound(grown.begin(), grown.end(), f), f);
      const double value = LogVolume(points, grown);
      if (best < 0 || value > best_value) {
        best = f;
        best_value = value;
      }
    }
    if (best < 0) break;
    tracker.Add(best);
    result.set.insert(
        std::upper_bound(result.set.begin(), result.set.end(), best), best);
  }
  result.feasible = result.set.size() == rank;
  result.log_value = result.feasible ? LogVolume(points, result.set) : kNegInf;
  return result;
}

SolveResult GreedyConstrained(const PointSet& points,
                              const Constraint& constraint) {
  return GreedyConstrained(points, Matroid(constraint, points));
}

SolveResult RefineBySwaps(const PointSet& points, const Matroid& matroid,
                          const SolveResult& start, double zeta) {
  Require(zeta > 1.0, ErrorCode::kInvalidArgument,
          "swap refinement requires zeta > 1");
  SolveResult result = start;
  result.method = SolveMethod::kLocalSearch;
  if (!result.feasible) return result;
  const double gain = std::log(zeta);
  for (std::int64_t swaps = 0;; ++swaps) {
    Require(swaps < kMaxSwaps, ErrorCode::kIterationLimit,
            "swap refinement exceeded the iteration cap");
    IdSet best;
    double best_value = result.log_value;
    for (PointId out : result.set) {
      for (PointId in : matroid.ground()) {
        if (Contains(result.set, in)) continue;
        IdSet candidate = Swap(result.set, out, in);
        if (!matroid.IsIndependent(candidate)) continue;
        const double value = LogVolume(points, candidate);
        if (value > best_value) {
          best_value = value;
          best = std::move(candidate);
        }
      }
    }
    const bool improves =
        !best.empty() && (result.log_value == kNegInf ||
                          best_value > result.log_value + gain);
    if (!improves) break;
    result.set = std::move(best);
    result.log_value = best_value;
  }
  return result;
}

SolveResult SolveOnCoreset(const PointSet& points, const Constraint& constraint,
                           std::span<const PointId> coreset_ids, bool refine) {
  const Matroid restricted =
      Matroid(constraint, points).Restricted(coreset_ids);
  if (restricted.CandidateCount() <= OracleCap()) {
    return BruteForceOpt(points, restricted);
  }
  SolveResult greedy = GreedyConstrained(points, restricted);
  if (!refine) return greedy;
  return RefineBySwaps(points, restricted, greedy, kDefaultZeta);
}

}  // namespace detmax
