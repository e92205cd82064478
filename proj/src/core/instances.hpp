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

// Seeded instance generators: random point clouds and the adversarial
// constructions that show coreset size and approximation lower bounds.

#ifndef DETMAX_CORE_INSTANCES_HPP_
#define DETMAX_CORE_INSTANCES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "core/geometry.hpp"
#include "core/id_set.hpp"
#include "core/matroid.hpp"

namespace detmax {

struct Instance {
  PointSet points;
  Constraint constraint;
  nlohmann::json meta = nlohmann::json::object();
};

struct RandomSpec {
  int n = 10;
  int d = 2;
  // "cardinality", "partition" or "laminar".
  std::string constraint = "cardinality";
  int k = 2;
  // Partition caps; laminar "flat" uses them as per-class caps and "chain"
  // as (inner cap, outer cap).
  std::vector<int> caps;
  // Laminar family shape: "flat", "chain" or "pairs".
  std::string laminar_shape = "flat";
  // Coordinates from {-3, ..., 3} instead of standard normal.
  bool integer_grid = false;
  std::uint64_t seed = 0;
};

// Groups are assigned round-robin over the classes. Throws kInvalidArgument
// for specs without a base (n < k, a class smaller than its cap).
Instance RandomInstance(const RandomSpec& spec);

// A base instance V, the adversarial completion V' and the partition
// constraint over their union.
struct LowerBoundInstance {
  PointSet v;
  PointSet vprime;
  Constraint constraint;
  nlohmann::json meta = nlohmann::json::object();

  Instance Combined() const;
};

// V n P_i = {e_1, ..., e_d} with id i * d + t for e_{t+1}; V' ids start at
// s * d. Without `subset` V' is the canonical completion that targets part 0;
// with it, V' is built against the given U subset of V (|U| < s k): it picks
// a part holding at most k - 1 elements of U and fills the other parts with M
// times directions spanning U's directions in that part.
LowerBoundInstance LowDimLowerBound(const std::vector<int>& caps, int d,
                                    double big_m,
                                    const IdSet* subset = nullptr);

// V n P_i = {M_i e_1, ..., M_i e_d} for i < k with unit caps; ids i * d + t.
// V' n P_t = {M e_t} for t != probe, t < d (probe is 1-based, at most d).
LowerBoundInstance HighDimLowerBound(int k, int d,
                                     const std::vector<double>& scales,
                                     double big_m, int probe);

// Hard input with planted directions: d - m sets QX_i and m sets QY_i, each
// vector duplicated k / d times.
struct HardInstance {
  int d = 0;
  int m = 0;
  int copies = 1;
  double beta = 0.0;
  double dot_bound = 0.0;
  double big_m = 0.0;
  // Columns are the unit vectors of G in R^(m+1).
  Eigen::MatrixXd g;
  Eigen::MatrixXd rotation;
  std::vector<int> planted_index;
  // Ids of every copy of Q e_{m+i}.
  IdSet planted_ids;
  // Ids of each input set, QX_1..QX_{d-m} then QY_1..QY_m.
  std::vector<IdSet> inputs;
  Instance instance;
};

inline constexpr int kHardGroundCap = 10'000;
inline constexpr int kHardMaxAttempts = 100'000;

// Requires d >= 4, k a positive multiple of d and
// 0 < beta <= d / (4 log2(d)^2). m = ceil(d / log2 d), |G| =
// min(round(d^(beta + 2)), kHardGroundCap), pairwise |<p, q>| <=
// 4 sqrt(beta) log2(d) / sqrt(d). Throws kPrecondition when rejection
// sampling needs more than kHardMaxAttempts draws.
HardInstance MakeHardInstance(int d, double beta, int k, std::uint64_t seed,
                              double big_m = 1e3);

}  // namespace detmax

#endif  // DETMAX_CORE_INSTANCES_HPP_
