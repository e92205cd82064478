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

#include "core/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/objective.hpp"

namespace detmax {
namespace {

// Columns of V packed contiguously, plus the ridge used by the search.
struct Ground {
  IdSet ids;
  Eigen::MatrixXd x;
  Eigen::VectorXd sq_norms;
  double eps = 0.0;
};

Ground Pack(const PointSet& points, std::span<const PointId> v, bool ridge) {
  Require(!HasDuplicates(v), ErrorCode::kInvalidArgument,
          "ground subset contains duplicate ids");
  Ground g;
  g.ids = MakeIdSet(v);
  const auto n = static_cast<Eigen::Index>(g.ids.size());
  g.x.resize(points.dim(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    g.x.col(i) = points.vec(g.ids[static_cast<std::size_t>(i)]);
  }
  g.sq_norms = g.x.colwise().squaredNorm().transpose();
  if (ridge && n > 0) g.eps = 1e-10 * g.sq_norms.mean();
  return g;
}

std::vector<Eigen::Index> GreedyPositions(const Ground& g, int ell) {
  const Eigen::Index n = g.x.cols();
  const Eigen::Index r = std::min<Eigen::Index>(ell, n);
  std::vector<Eigen::Index> picked;
  picked.reserve(static_cast<std::size_t>(r));
  if (r == 0) return picked;

  Eigen::VectorXd residual = g.sq_norms.array() + g.eps;
  const double tiny = kSingularPivot * residual.mean();
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(r, n);
  for (Eigen::Index j = 0; j < r; ++j) {
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (chosen[static_cast<std::size_t>(i)]) continue;
      if (best < 0 || residual(i) > residual(best)) best = i;
    }
    chosen[static_cast<std::size_t>(best)] = true;
    picked.push_back(best);
    if (residual(best) <= tiny) {
      // Nothing left outside the span; fill by id order.
      for (Eigen::Index i = 0;
           i < n && static_cast<Eigen::Index>(picked.size()) < r; ++i) {
        if (!chosen[static_cast<std::size_t>(i)]) {
          chosen[static_cast<std::size_t>(i)] = true;
          picked.push_back(i);
        }
      }
      break;
    }
    const double root = std::sqrt(residual(best));
    const Eigen::VectorXd inner = g.x.transpose() * g.x.col(best);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (chosen[static_cast<std::size_t>(i)]) continue;
      const double e =
          (inner(i) - c.col(best).head(j).dot(c.col(i).head(j))) / root;
      c(j, i) = e;
      residual(i) = std::max(0.0, residual(i) - e * e);
    }
  }
  return picked;
}

IdSet ToIds(const Ground& g, const std::vector<Eigen::Index>& positions) {
  IdSet out;
  out.reserve(positions.size());
  for (Eigen::Index p : positions) {
    out.push_back(g.ids[static_cast<std::size_t>(p)]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::MatrixXd SearchKernel(const Ground& g,
                             const std::vector<Eigen::Index>& positions) {
  const auto r = static_cast<Eigen::Index>(positions.size());
  Eigen::MatrixXd b(g.x.rows(), r);
  for (Eigen::Index i = 0; i < r; ++i) {
    b.col(i) = g.x.col(positions[static_cast<std::size_t>(i)]);
  }
  Eigen::MatrixXd k = b.transpose() * b;
  k.triangularView<Eigen::StrictlyUpper>() =
      k.transpose().triangularView<Eigen::StrictlyUpper>();
  k.diagonal().array() += g.eps;
  return k;
}

}  // namespace

IdSet GreedyInit(const PointSet& points, std::span<const PointId> v, int ell,
                 bool ridge) {
  Require(ell >= 0, ErrorCode::kInvalidArgument, "ell must be non-negative");
  const Ground g = Pack(points, v, ridge);
  return ToIds(g, GreedyPositions(g, ell));
}

LocalOptResult LocalOpt(const PointSet& points, std::span<const PointId> v,
                        int ell, const LocalSearchOptions& options) {
  Require(options.zeta > 1.0, ErrorCode::kInvalidArgument,
          "local search requires zeta > 1");
  Require(ell >= 1 && ell <= points.dim(), ErrorCode::kInvalidArgument,
          "local search requires 1 <= ell <= d");
  const Ground g = Pack(points, v, options.ridge);
  const auto n = static_cast<Eigen::Index>(g.ids.size());

  LocalOptResult result;
  result.zeta = options.zeta;
  if (n <= ell) {
    result.set = g.ids;
    result.value = LogVolume(points, result.set);
    result.degenerate = result.value == kNegInf;
    result.trajectory.push_back(result.value);
    return result;
  }

  std::vector<Eigen::Index> current = GreedyPositions(g, ell);
  result.set = ToIds(g, current);
  result.value = Nu(points, result.set, ell);
  result.trajectory.push_back(result.value);
  if (LogDetPsd(SearchKernel(g, current)) == kNegInf) {
    result.degenerate = true;
    return result;
  }

  std::vector<bool> in_set(static_cast<std::size_t>(n), false);
  for (Eigen::Index p : current) in_set[static_cast<std::size_t>(p)] = true;
  const Eigen::Index r = ell;
  while (true) {
    Eigen::MatrixXd b(g.x.rows(), r);
    for (Eigen::Index i = 0; i < r; ++i) {
      b.col(i) = g.x.col(current[static_cast<std::size_t>(i)]);
    }
    const Eigen::MatrixXd kernel = SearchKernel(g, current);
    const Eigen::MatrixXd inv =
        kernel.llt().solve(Eigen::MatrixXd::Identity(r, r));

    // det K(T - t_p + f) / det K(T) = z_p^2 + s * inv_pp with z = K^-1 k_f
    // and s the ridge-adjusted residual of f against span(T).
    double best_ratio = 0.0;
    Eigen::Index best_slot = -1;
    Eigen::Index best_in = -1;
    const Eigen::MatrixXd cross = b.transpose() * g.x;
    const Eigen::MatrixXd zs = inv * cross;
    const Eigen::VectorXd proj =
        cross.cwiseProduct(zs).colwise().sum().transpose();
    for (Eigen::Index f = 0; f < n; ++f) {
      if (in_set[static_cast<std::size_t>(f)]) continue;
      const double s = std::max(0.0, g.sq_norms(f) + g.eps - proj(f));
      for (Eigen::Index p = 0; p < r; ++p) {
        const double z = zs(p, f);
        const double ratio = z * z + s * inv(p, p);
        bool better = ratio > best_ratio;
        if (!better && best_slot >= 0 && ratio == best_ratio) {
          const PointId out = g.ids[static_cast<std::size_t>(
              current[static_cast<std::size_t>(p)])];
          const PointId best_out = g.ids[static_cast<std::size_t>(
              current[static_cast<std::size_t>(best_slot)])];
          better = out < best_out ||
                   (out == best_out &&
                    g.ids[static_cast<std::size_t>(f)] <
                        g.ids[static_cast<std::size_t>(best_in)]);
        }
        if (better) {
          best_ratio = ratio;
          best_slot = p;
          best_in = f;
        }
      }
    }
    if (best_slot < 0 || !(best_ratio > options.zeta)) break;
    if (result.swap_count >= options.max_swaps) {
      Fail(ErrorCode::kIterationLimit,
           "local search exceeded " + std::to_string(options.max_swaps) +
               " swaps");
    }
    Eigen::Index& slot = current[static_cast<std::size_t>(best_slot)];
    in_set[static_cast<std::size_t>(slot)] = false;
    in_set[static_cast<std::size_t>(best_in)] = true;
    slot = best_in;
    ++result.swap_count;
    result.set = ToIds(g, current);
    result.value = Nu(points, result.set, ell);
    result.trajectory.push_back(result.value);
  }
  return result;
}

std::optional<std::pair<PointId, PointId>> VerifyLocalOpt(
    const PointSet& points, std::span<const PointId> v,
    std::span<const PointId> set, double zeta) {
  Require(zeta >= 1.0, ErrorCode::kInvalidArgument, "zeta must be >= 1");
  const IdSet ground = MakeIdSet(v);
  const IdSet s = MakeIdSet(set);
  Require(s.size() == set.size(), ErrorCode::kInvalidArgument,
          "candidate set contains duplicate ids");
  for (PointId id : s) {
    Require(Contains(ground, id), ErrorCode::kInvalidArgument,
            "candidate set is not contained in V");
  }
  const int ell = static_cast<int>(s.size());
  if (ell == 0) return std::nullopt;
  const double threshold = Nu(points, s, ell) + std::log(zeta) + kLocalOptSlack;

  std::optional<std::pair<PointId, PointId>> best;
  double best_value = kNegInf;
  for (PointId out : s) {
    for (PointId in : ground) {
      if (Contains(s, in)) continue;
      const double value = Nu(points, Swap(s, out, in), ell);
      if (value > threshold && (!best || value > best_value)) {
        best = std::make_pair(out, in);
        best_value = value;
      }
    }
  }
  return best;
}

}  // namespace detmax
