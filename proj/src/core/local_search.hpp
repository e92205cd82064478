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

// Approximate local optima of nu over a ground subset V: greedy MAP
// initialization followed by best-improvement single swaps (Fedorov exchange).

#ifndef DETMAX_CORE_LOCAL_SEARCH_HPP_
#define DETMAX_CORE_LOCAL_SEARCH_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "core/geometry.hpp"
#include "core/id_set.hpp"

namespace detmax {

inline constexpr double kDefaultZeta = 1.01;
inline constexpr std::int64_t kMaxSwaps = 1'000'000;
// Slack applied when auditing local optimality with directly evaluated nu.
inline constexpr double kLocalOptSlack = 1e-9;

struct LocalSearchOptions {
  double zeta = kDefaultZeta;
  // Adds eps * I to the kernel, eps = 1e-10 * mean squared norm of the points.
  bool ridge = false;
  std::int64_t max_swaps = kMaxSwaps;
};

struct LocalOptResult {
  IdSet set;
  double zeta = kDefaultZeta;
  std::int64_t swap_count = 0;
  // ln nu(set), evaluated without ridge.
  double value = kNegInf;
  // Every ell-subset tried by greedy was singular; set is the greedy output.
  bool degenerate = false;
  // ln nu after initialization and after each accepted swap.
  std::vector<double> trajectory;
};

// Greedy MAP: repeatedly adds the element with the largest residual norm
// against the span of the chosen ones. Returns min(ell, |V|) ids, ties broken
// by smallest id. V must be an id set.
IdSet GreedyInit(const PointSet& points, std::span<const PointId> v, int ell,
                 bool ridge = false);

// Requires zeta > 1 and ell <= d. Throws kIterationLimit after
// options.max_swaps accepted swaps.
LocalOptResult LocalOpt(const PointSet& points, std::span<const PointId> v,
                        int ell, const LocalSearchOptions& options = {});

// Returns the swap (out, in) maximizing nu(set - out + in) among swaps that
// beat nu(set) by more than a factor zeta (plus kLocalOptSlack in log
// domain), or nothing when set is a zeta-local optimum in V.
std::optional<std::pair<PointId, PointId>> VerifyLocalOpt(
    const PointSet& points, std::span<const PointId> v,
    std::span<const PointId> set, double zeta);

}  // namespace detmax

#endif  // DETMAX_CORE_LOCAL_SEARCH_HPP_
