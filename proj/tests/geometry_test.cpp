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


#include <cmath>
#include <random>

#include "doctest.h"

#include "core/error.hpp"
#include "core/geometry.hpp"
#include "core/objective.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace detmax;
using testutil::Points;

namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("point set rejects bad input") {
  CHECK(CodeOf([] { Points(2, {{1, 0}, {0, 1, 0}}); }) ==
        ErrorCode::kDimensionMismatch);
  CHECK(CodeOf([] {
          PointSet(2, {{0, std::nullopt, {1, 0}}, {0, std::nullopt, {0, 1}}});
        }) == ErrorCode::kDuplicateId);
  const PointSet p = Points(2, {{1, 0}, {0, 1}});
  CHECK(p.size() == 2);
  CHECK(p.dim() == 2);
  CHECK(CodeOf([&] { p.IndexOf(7); }) == ErrorCode::kUnknownId);
}

TEST_CASE("gram sums rank-one terms with multiplicity") {
  const PointSet p = Points(2, {{1, 0}, {0, 1}, {1, 1}});
  CHECK(Gram(p, std::vector<PointId>{0, 1}).entries.isApprox(
      Eigen::Matrix2d::Identity()));
  Eigen::Matrix2d twice;
  twice << 2, 0, 0, 0;
  CHECK(Gram(p, std::vector<PointId>{0, 0}).entries.isApprox(twice));
  Eigen::Matrix2d m;
  m << 2, 1, 1, 1;
  CHECK(Gram(p, std::vector<PointId>{0, 2}).entries.isApprox(m));
  CHECK(Gram(p, std::vector<PointId>{2, 0}).entries.isApprox(m));
}

TEST_CASE("log det of small matrices") {
  CHECK(LogDetPsd(Eigen::MatrixXd(Eigen::Matrix2d::Identity())) == 0.0);
  Eigen::MatrixXd singular(2, 2);
  singular << 2, 0, 0, 0;
  CHECK(LogDetPsd(singular) == kNegInf);
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  CHECK(LogDetPsd(m) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1, 0, 0, -1;
  CHECK(CodeOf([&] { LogDetPsd(indefinite); }) == ErrorCode::kNotPsd);
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0, 1;
  CHECK(CodeOf([&] { LogDetPsd(asym); }) == ErrorCode::kNotPsd);
  CHECK(LogDetPsd(Eigen::MatrixXd(0, 0)) == 0.0);
}

TEST_CASE("log det matches the exact Bareiss determinant on integer data") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coord(-3, 3);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 2 + trial % 3;
    const int n = d + static_cast<int>(rng() % 4);
    std::vector<PointRecord> records;
    for (int i = 0; i < n; ++i) {
      std::vector<double> c(static_cast<std::size_t>(d));
      for (double& x : c) x = coord(rng);
      records.push_back({i, std::nullopt, c});
    }
    const PointSet p(d, records);
    const IdSet ids = p.ids();
    const __int128 exact = oracle::ExactOuterDet(p, ids);
    const double got = LogDetPsd(Gram(p, ids));
    if (exact == 0) {
      CHECK(got == kNegInf);
      continue;
    }
    ++checked;
    const double ratio = std::exp(got - oracle::LogOf(exact));
    CHECK(std::abs(ratio - 1.0) <= 1e-9);
  }
  CHECK(checked > 200);
}

TEST_CASE("log det scales by d ln c") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXd x(3, 5);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
    const Eigen::MatrixXd m = x * x.transpose();
    const double c = 0.01 + 10.0 * std::uniform_real_distribution<double>()(rng);
    const double base = LogDetPsd(m);
    const double scaled = LogDetPsd(Eigen::MatrixXd(c * m));
    CHECK(std::abs(scaled - (base + 3 * std::log(c))) <=
          1e-9 * std::max(1.0, std::abs(base)));
  }
}

TEST_CASE("log volume uses the smaller Gram form") {
  const PointSet p = Points(3, {{1, 0, 0}, {1, 1, 0}, {0, 0, 2}, {5, 5, 0}});
  // Two vectors in R^3: det [[1,1],[1,2]] = 1.
  CHECK(LogVolume(p, std::vector<PointId>{0, 1}) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(LogVolume(p, std::vector<PointId>{1, 3}) == kNegInf);
  CHECK(LogVolume(p, std::vector<PointId>{0, 1, 2}) ==
        doctest::Approx(std::log(4.0)));
  CHECK(LogVolume(p, std::vector<PointId>{}) == 0.0);
}

TEST_CASE("nu and mu known values") {
  const PointSet p = Points(2, {{1, 0}, {0, 1}, {1, 1}, {2, 0}});
  CHECK(Nu(p, std::vector<PointId>{0, 1}, 2) == doctest::Approx(0.0));
  CHECK(Nu(p, std::vector<PointId>{0, 3}, 2) == kNegInf);
  CHECK(Nu(p, std::vector<PointId>{0, 2}, 2) == doctest::Approx(0.0));
  CHECK(CodeOf([&] { Nu(p, std::vector<PointId>{0}, 2); }) ==
        ErrorCode::kInvalidArgument);

  CHECK(Mu(p, std::vector<PointId>{0, 1, 2}, 2) ==
        doctest::Approx(std::log(3.0)));
  CHECK(Mu(p, std::vector<PointId>{0, 1}, 2) == doctest::Approx(0.0));
  CHECK(Mu(p, std::vector<PointId>{0, 3}, 2) == kNegInf);
  CHECK(CodeOf([&] { Mu(p, std::vector<PointId>{0}, 2); }) ==
        ErrorCode::kInvalidArgument);

  CHECK(MuCauchyBinet(p, std::vector<PointId>{0, 1, 2}, 2) ==
        doctest::Approx(std::log(3.0)));
  CHECK(MuCauchyBinet(p, std::vector<PointId>{0, 1}, 2) ==
        doctest::Approx(0.0));
  CHECK(MuCauchyBinet(p, std::vector<PointId>{0, 3}, 2) == kNegInf);
}

TEST_CASE("weighted objectives known values") {
  const PointSet p = Points(2, {{1, 0}, {0, 1}, {1, 1}});
  const std::vector<PointId> s{0, 1, 2};
  WeightProfile w;
  w.ell = 2;
  w.zeta = 1.0;
  CHECK(MuTilde(p, s, w) == doctest::Approx(Mu(p, s, 2)));
  w.coreset_ids = {0};
  CHECK(MuTilde(p, s, w) == doctest::Approx(std::log(9.0)));
  w.coreset_ids = {0, 1, 2};
  w.zeta = 1.3;
  CHECK(MuTilde(p, std::vector<PointId>{0, 1}, w) ==
        doctest::Approx(ApproximationExponent(2, 1.3)));

  WeightProfile low;
  low.regime = Regime::kLowK;
  low.ell = 2;
  low.zeta = 1.0;
  CHECK(MuHatLowDim(p, std::vector<PointId>{0, 2}, low) ==
        doctest::Approx(0.0));
  low.coreset_ids = {0, 2};
  CHECK(MuHatLowDim(p, std::vector<PointId>{0, 2}, low) ==
        doctest::Approx(4 * std::log(2.0)));
  WeightProfile one;
  one.regime = Regime::kLowK;
  one.ell = 2;
  one.zeta = 1.0;
  one.coreset_ids = {1};
  // mu = 3 with one of the two elements in U.
  const PointSet t = Points(2, {{1, 0}, {1, std::sqrt(3.0)}});
  CHECK(MuHatLowDim(t, std::vector<PointId>{0, 1}, one) ==
        doctest::Approx(std::log(12.0)));
}

TEST_CASE("mu agrees with the Cauchy-Binet oracle and the sandwich holds") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 3;
    const int k = d + static_cast<int>(rng() % 3);
    std::vector<PointRecord> records;
    for (int i = 0; i < k; ++i) {
      std::vector<double> c(static_cast<std::size_t>(d));
      for (double& x : c) x = g(rng);
      records.push_back({i, std::nullopt, c});
    }
    const PointSet p(d, records);
    const double mu = Mu(p, p.ids(), d);
    CHECK(oracle::SameLog(mu, MuCauchyBinet(p, p.ids(), d), 1e-8));
    WeightProfile w;
    w.ell = d;
    w.zeta = 1.01 + 0.5 * (trial % 4);
    for (PointId id : p.ids()) {
      if (rng() % 2) w.coreset_ids.push_back(id);
    }
    const double tilde = MuTilde(p, p.ids(), w);
    CHECK(mu <= tilde + 1e-9);
    CHECK(tilde <= mu + ApproximationExponent(d, w.zeta) + 1e-9);
  }
}

TEST_CASE("log-sum-exp handles extremes") {
  CHECK(LogSumExp(std::vector<double>{}) == kNegInf);
  CHECK(LogSumExp(std::vector<double>{kNegInf, kNegInf}) == kNegInf);
  CHECK(LogSumExp(std::vector<double>{1000.0, 1000.0}) ==
        doctest::Approx(1000.0 + std::log(2.0)));
  CHECK(LogSumExp(std::vector<double>{0.0, kNegInf}) == doctest::Approx(0.0));
}
