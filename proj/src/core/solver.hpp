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

#ifndef DETMAX_CORE_SOLVER_HPP_
#define DETMAX_CORE_SOLVER_HPP_

#include <span>
#include <string>

#include "core/geometry.hpp"
#include "core/id_set.hpp"
#include "core/matroid.hpp"

namespace detmax {

enum class SolveMethod { kBruteForce, kGreedy, kLocalSearch };

const char* SolveMethodName(SolveMethod method);
SolveMethod ParseSolveMethod(const std::string& name);

// `feasible` is false when no base exists; log_value is then -inf and `set`
// holds whatever partial solution was reached. A feasible result may still
// have log_value = -inf (every base is singular).
struct SolveResult {
  IdSet set;
  double log_value = kNegInf;
  bool feasible = false;
  SolveMethod method = SolveMethod::kBruteForce;
};

// Exact maximum of LogVolume over the bases of `matroid`; ties go to the
// lexicographically smallest base. Throws kGuardExceeded past OracleCap().
SolveResult BruteForceOpt(const PointSet& points, const Matroid& matroid);
SolveResult BruteForceOpt(const PointSet& points, const Constraint& constraint);

// Adds, while the set is not a base, the independent extension with the
// largest LogVolume (ties to the smallest id).
SolveResult GreedyConstrained(const PointSet& points, const Matroid& matroid);
SolveResult GreedyConstrained(const PointSet& points,
                              const Constraint& constraint);

// Best-improvement single swaps that keep `start` a base, accepted while the
// gain exceeds ln(zeta).
SolveResult RefineBySwaps(const PointSet& points, const Matroid& matroid,
                          const SolveResult& start, double zeta);

// Restricts the constraint to `coreset_ids` and solves exactly when the
// enumeration fits OracleCap(), otherwise greedily (then refined by swaps
// when `refine` is set). Result ids are ids of `points`.
SolveResult SolveOnCoreset(const PointSet& points, const Constraint& constraint,
                           std::span<const PointId> coreset_ids,
                           bool refine = false);

}  // namespace detmax

#endif  // DETMAX_CORE_SOLVER_HPP_
