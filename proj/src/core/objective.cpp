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

#include "core/objective.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/error.hpp"

namespace detmax {
namespace {

void RequireSet(std::span<const PointId> ids) {
  Require(!HasDuplicates(ids), ErrorCode::kInvalidArgument,
          "id set contains duplicates");
}

std::vector<double> CoresetWeights(std::span<const PointId> s,
                                   const WeightProfile& w) {
  const double c = std::pow(w.zeta * w.ell, 2.0);
  std::vector<double> weights(s.size(), 1.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (Contains(w.coreset_ids, s[i])) weights[i] = c;
  }
  return weights;
}

}  // namespace

const char* RegimeName(Regime regime) {
  return regime == Regime::kLowK ? "lowk" : "highk";
}

Regime ParseRegime(const std::string& name) {
  if (name == "lowk") return Regime::kLowK;
  if (name == "highk") return Regime::kHighK;
  Fail(ErrorCode::kParse, "unknown regime '" + name + "'");
}

void WeightProfile::Validate() const {
  Require(zeta >= 1.0, ErrorCode::kInvalidArgument, "zeta must be >= 1");
  Require(ell >= 1, ErrorCode::kInvalidArgument, "ell must be >= 1");
  Require(std::is_sorted(coreset_ids.begin(), coreset_ids.end()) &&
              !HasDuplicates(coreset_ids),
          ErrorCode::kInvalidArgument, "coreset ids must be a sorted set");
}

double WeightProfile::LogElementWeight() const {
  return 2.0 * std::log(zeta * ell);
}

double LogSumExp(std::span<const double> values) {
  double top = kNegInf;
  for (double v : values) top = std::max(top, v);
  if (top == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - top);
  return top + std::log(sum);
}

double Nu(const PointSet& points, std::span<const PointId> w, int ell) {
  Require(static_cast<int>(w.size()) == ell, ErrorCode::kInvalidArgument,
          "nu expects exactly ell = " + std::to_string(ell) + " ids, got " +
              std::to_string(w.size()));
  Require(ell <= points.dim(), ErrorCode::kInvalidArgument,
          "nu requires ell <= d");
  RequireSet(w);
  return LogDetPsd(InnerProducts(points, w));
}

double Mu(const PointSet& points, std::span<const PointId> s, int ell) {
  const int k = static_cast<int>(s.size());
  Require(k >= ell, ErrorCode::kInvalidArgument,
          "mu requires |S| >= ell = " + std::to_string(ell));
  Require(ell == std::min(k, points.dim()), ErrorCode::kInvalidArgument,
          "mu is a single determinant only for ell = min(|S|, d)");
  RequireSet(s);
  return LogVolume(points, s);
}

double MuCauchyBinet(const PointSet& points, std::span<const PointId> s,
                     int ell) {
  const int k = static_cast<int>(s.size());
  Require(k <= kCauchyBinetMaxSize, ErrorCode::kGuardExceeded,
          "Cauchy-Binet expansion is limited to |S| <= " +
              std::to_string(kCauchyBinetMaxSize));
  Require(ell >= 0 && ell <= k, ErrorCode::kInvalidArgument,
          "Cauchy-Binet expansion needs 0 <= ell <= |S|");
  RequireSet(s);
  if (ell > points.dim()) return kNegInf;

  // Walk all ell-combinations of positions in lexicographic order.
  const std::size_t n = s.size();
  const std::size_t r = static_cast<std::size_t>(ell);
  std::vector<std::size_t> pick(r);
  for (std::size_t i = 0; i < r; ++i) pick[i] = i;
  std::vector<PointId> w(r);
  std::vector<double> terms;
  while (true) {
    for (std::size_t i = 0; i < r; ++i) w[i] = s[pick[i]];
    terms.push_back(LogDetPsd(InnerProducts(points, w)));
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
  return LogSumExp(terms);
}

double MuTilde(const PointSet& points, std::span<const PointId> s,
               const WeightProfile& weights) {
  weights.Validate();
  Require(weights.regime == Regime::kHighK, ErrorCode::kInvalidArgument,
          "mu_tilde is defined for the highk regime");
  const int k = static_cast<int>(s.size());
  Require(k >= weights.ell, ErrorCode::kInvalidArgument,
          "mu_tilde requires |S| >= ell");
  Require(weights.ell == std::min(k, points.dim()),
          ErrorCode::kInvalidArgument,
          "mu_tilde via scaled vectors requires ell = min(|S|, d)");
  RequireSet(s);
  const std::vector<double> c = CoresetWeights(s, weights);
  return LogVolume(points, s, c);
}

double MuHatLowDim(const PointSet& points, std::span<const PointId> s,
                   const WeightProfile& weights) {
  weights.Validate();
  Require(weights.regime == Regime::kLowK, ErrorCode::kInvalidArgument,
          "mu_hat is defined for the lowk regime");
  const int k = static_cast<int>(s.size());
  Require(k == weights.ell && k <= points.dim(), ErrorCode::kInvalidArgument,
          "mu_hat requires |S| = ell <= d");
  const double base = Mu(points, s, weights.ell);
  if (base == kNegInf) return kNegInf;
  std::size_t inside = 0;
  for (PointId id : s) inside += Contains(weights.coreset_ids, id) ? 1 : 0;
  return base + static_cast<double>(inside) * weights.LogElementWeight();
}

double WeightedObjective(const PointSet& points, std::span<const PointId> s,
                         const WeightProfile& weights) {
  return weights.regime == Regime::kHighK ? MuTilde(points, s, weights)
                                          : MuHatLowDim(points, s, weights);
}

double ApproximationExponent(int ell, double zeta) {
  return 2.0 * ell * std::log(zeta * ell);
}

}  // namespace detmax
