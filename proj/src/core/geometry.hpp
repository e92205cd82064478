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

#ifndef DETMAX_CORE_GEOMETRY_HPP_
#define DETMAX_CORE_GEOMETRY_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "core/id_set.hpp"

namespace detmax {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Relative cutoff on Cholesky pivots: a pivot at or below
// kSingularPivot * trace / n classifies the matrix as singular.
inline constexpr double kSingularPivot = 1e-12;
// Pivots below -kPsdTolerance * max(1, trace / n) reject the matrix.
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kSymmetryTolerance = 1e-12;

struct PointRecord {
  PointId id = 0;
  std::optional<int> group;
  std::vector<double> coords;
};

// Immutable collection of d-dimensional vectors keyed by id. Points are kept
// in ascending id order; column i of coords() belongs to ids()[i].
class PointSet {
 public:
  PointSet() = default;
  PointSet(int dim, std::vector<PointRecord> records);

  int dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  const IdSet& ids() const { return ids_; }
  const Eigen::MatrixXd& coords() const { return coords_; }

  bool contains(PointId id) const { return index_.count(id) != 0; }
  // Throws ErrorCode::kUnknownId.
  std::size_t IndexOf(PointId id) const;

  Eigen::MatrixXd::ConstColXpr vec(PointId id) const {
    return coords_.col(static_cast<Eigen::Index>(IndexOf(id)));
  }
  std::optional<int> group(PointId id) const { return groups_[IndexOf(id)]; }
  std::optional<int> group_at(std::size_t index) const {
    return groups_[index];
  }

  PointSet Subset(std::span<const PointId> ids) const;
  // Union with a point set of the same dimension and disjoint ids.
  PointSet Merged(const PointSet& other) const;
  std::vector<PointRecord> Records() const;

  double MeanSquaredNorm() const;

 private:
  int dim_ = 0;
  IdSet ids_;
  Eigen::MatrixXd coords_;
  std::vector<std::optional<int>> groups_;
  std::unordered_map<PointId, std::size_t> index_;
};

// d x d matrix sum_{i in S} v_i v_i^T.
struct GramMatrix {
  Eigen::MatrixXd entries;
  int dim() const { return static_cast<int>(entries.rows()); }
};

// `ids` is a multiset: a repeated id contributes its rank-one term repeatedly.
GramMatrix Gram(const PointSet& points, std::span<const PointId> ids);

// |S| x |S| matrix of inner products w_i w_j <v_i, v_j>, where w_i is the
// square root of weights[i] (all ones when `weights` is empty).
Eigen::MatrixXd InnerProducts(const PointSet& points,
                              std::span<const PointId> ids,
                              std::span<const double> weights = {});

// ln det of a symmetric PSD matrix via an unpivoted Cholesky factorization.
// Returns kNegInf once a pivot falls to kSingularPivot * trace / n or below.
// The empty matrix has determinant one.
double LogDetPsd(const Eigen::MatrixXd& m);
inline double LogDetPsd(const GramMatrix& m) { return LogDetPsd(m.entries); }

// ln of the squared volume spanned by the (optionally weighted) vectors:
// det of the |S| x |S| inner-product matrix when |S| <= d, and
// det(sum v_i v_i^T) otherwise. Both agree at |S| = d.
double LogVolume(const PointSet& points, std::span<const PointId> ids,
                 std::span<const double> weights = {});

}  // namespace detmax

#endif  // DETMAX_CORE_GEOMETRY_HPP_
