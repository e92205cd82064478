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

// Determinant objectives in log domain.
//
// nu(W) is the squared volume of an ell-subset W. mu(S) for |S| = k >= ell is
// the sum of nu over the ell-subsets of S, which for ell = min(k, d) collapses
// to a single determinant. The weighted variants multiply nu(W) by
// (zeta * ell)^(2 |W n U|) for a coreset U; they are evaluated by scaling
// the coreset vectors by zeta * ell, which is the same sum by Cauchy-Binet.

#ifndef DETMAX_CORE_OBJECTIVE_HPP_
#define DETMAX_CORE_OBJECTIVE_HPP_

#include <span>
#include <string>

#include "core/geometry.hpp"
#include "core/id_set.hpp"

namespace detmax {

enum class Regime {
  kLowK,   // k <= d, ell = k: one local optimum per part.
  kHighK,  // ell = min(k, d): peeling coresets.
};

const char* RegimeName(Regime regime);
Regime ParseRegime(const std::string& name);

struct WeightProfile {
  IdSet coreset_ids;
  double zeta = 1.01;
  int ell = 1;
  Regime regime = Regime::kHighK;

  // Checks zeta >= 1, ell >= 1 and that coreset_ids is a sorted id set.
  void Validate() const;
  // ln((zeta * ell)^2), the log weight of one coreset element.
  double LogElementWeight() const;
};

// Max-shifted log(sum exp(x_i)); kNegInf for an empty or all -inf input.
double LogSumExp(std::span<const double> values);

// ln nu(W). Requires |W| == ell <= d and W free of duplicates.
double Nu(const PointSet& points, std::span<const PointId> w, int ell);

// ln mu(S) = ln det of the Gram of S. Requires |S| >= ell and
// ell == min(|S|, d), the only setting in which the single determinant equals
// the ell-subset sum.
double Mu(const PointSet& points, std::span<const PointId> s, int ell);

// Combinatorial route: log-sum-exp of Nu over all ell-subsets of S. Guarded to
// |S| <= kCauchyBinetMaxSize.
inline constexpr int kCauchyBinetMaxSize = 20;
double MuCauchyBinet(const PointSet& points, std::span<const PointId> s,
                     int ell);

// Weighted objective for the HighK regime. Satisfies
// Mu(S) <= MuTilde(S) <= Mu(S) + 2 ell ln(zeta ell).
double MuTilde(const PointSet& points, std::span<const PointId> s,
               const WeightProfile& weights);

// LowK regime: Mu(S) + 2 |U n S| ln(zeta k) with k = |S| = ell.
double MuHatLowDim(const PointSet& points, std::span<const PointId> s,
                   const WeightProfile& weights);

// Dispatches on weights.regime.
double WeightedObjective(const PointSet& points, std::span<const PointId> s,
                         const WeightProfile& weights);

// 2 ell ln(zeta ell): log of the composability factor (zeta ell)^(2 ell).
double ApproximationExponent(int ell, double zeta);

}  // namespace detmax

#endif  // DETMAX_CORE_OBJECTIVE_HPP_
