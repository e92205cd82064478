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

#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace detmax {

PointSet::PointSet(int dim, std::vector<PointRecord> records) : dim_(dim) {
  Require(dim >= 1, ErrorCode::kInvalidArgument,
          "point dimension must be positive, got " + std::to_string(dim));
  std::sort(records.begin(), records.end(),
            [](const PointRecord& a, const PointRecord& b) {
              return a.id < b.id;
            });
  const auto n = static_cast<Eigen::Index>(records.size());
  coords_.resize(dim, n);
  ids_.reserve(records.size());
  groups_.reserve(records.size());
  index_.reserve(records.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const PointRecord& r = records[static_cast<std::size_t>(i)];
    Require(r.id >= 0, ErrorCode::kInvalidArgument,
            "point ids must be non-negative, got " + std::to_string(r.id));
    if (!ids_.empty() && ids_.back() == r.id) {
      Fail(ErrorCode::kDuplicateId, "duplicate point id " + std::to_string(r.id));
    }
    Require(static_cast<int>(r.coords.size()) == dim,
            ErrorCode::kDimensionMismatch,
            "point " + std::to_string(r.id) + " has " +
                std::to_string(r.coords.size()) + " coordinates, expected " +
                std::to_string(dim));
    for (int c = 0; c < dim; ++c) {
      const double x = r.coords[static_cast<std::size_t>(c)];
      Require(std::isfinite(x), ErrorCode::kInvalidArgument,
              "point " + std::to_string(r.id) + " has a non-finite coordinate");
      coords_(c, i) = x;
    }
    ids_.push_back(r.id);
    groups_.push_back(r.group);
    index_.emplace(r.id, static_cast<std::size_t>(i));
  }
}

std::size_t PointSet::IndexOf(PointId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    Fail(ErrorCode::kUnknownId, "unknown point id " + std::to_string(id));
  }
  return it->second;
}

PointSet PointSet::Subset(std::span<const PointId> ids) const {
  std::vector<PointRecord> records;
  records.reserve(ids.size());
  for (PointId id : MakeIdSet(ids)) {
    const std::size_t i = IndexOf(id);
    const auto col = coords_.col(static_cast<Eigen::Index>(i));
    records.push_back({id, groups_[i],
                       std::vector<double>(col.data(), col.data() + dim_)});
  }
  return PointSet(dim_, std::move(records));
}

PointSet PointSet::Merged(const PointSet& other) const {
  Require(other.empty() || empty() || other.dim() == dim_,
          ErrorCode::kDimensionMismatch, "cannot merge point sets of different dimension");
  std::vector<PointRecord> records = Records();
  for (PointRecord& r : other.Records()) records.push_back(std::move(r));
  return PointSet(empty() ? other.dim() : dim_, std::move(records));
}

std::vector<PointRecord> PointSet::Records() const {
  std::vector<PointRecord> out;
  out.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    const auto col = coords_.col(static_cast<Eigen::Index>(i));
    out.push_back({ids_[i], groups_[i],
                   std::vector<double>(col.data(), col.data() + dim_)});
  }
  return out;
}

double PointSet::MeanSquaredNorm() const {
  if (ids_.empty()) return 0.0;
  return coords_.colwise().squaredNorm().sum() /
         static_cast<double>(ids_.size());
}

GramMatrix Gram(const PointSet& points, std::span<const PointId> ids) {
  const int d = points.dim();
  GramMatrix g{Eigen::MatrixXd::Zero(d, d)};
  for (PointId id : ids) {
    const auto v = points.vec(id);
    g.entries.selfadjointView<Eigen::Lower>().rankUpdate(v);
  }
  g.entries.triangularView<Eigen::StrictlyUpper>() =
      g.entries.transpose().triangularView<Eigen::StrictlyUpper>();
  return g;
}

Eigen::MatrixXd InnerProducts(const PointSet& points,
                              std::span<const PointId> ids,
                              std::span<const double> weights) {
  Require(weights.empty() || weights.size() == ids.size(),
          ErrorCode::kInvalidArgument, "weights must match ids");
  const auto k = static_cast<Eigen::Index>(ids.size());
  Eigen::MatrixXd cols(points.dim(), k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double w =
        weights.empty() ? 1.0 : std::sqrt(weights[static_cast<std::size_t>(i)]);
    cols.col(i) = w * points.vec(ids[static_cast<std::size_t>(i)]);
  }
  Eigen::MatrixXd g = cols.transpose() * cols;
  // Exact symmetry: the product above is symmetric up to rounding only.
  g.triangularView<Eigen::StrictlyUpper>() =
      g.transpose().triangularView<Eigen::StrictlyUpper>();
  return g;
}

double LogDetPsd(const Eigen::MatrixXd& m) {
  Require(m.rows() == m.cols(), ErrorCode::kInvalidArgument,
          "determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return 0.0;
  Require(m.allFinite(), ErrorCode::kNotPsd, "matrix has non-finite entries");

  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      Require(std::abs(m(i, j) - m(j, i)) <= kSymmetryTolerance * scale,
              ErrorCode::kNotPsd, "matrix is not symmetric");
    }
  }
  const double mean_diag = m.trace() / static_cast<double>(n);
  const double psd_floor = -kPsdTolerance * std::max(1.0, std::abs(mean_diag));
  const double singular = kSingularPivot * mean_diag;

  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  double log_det = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = m(j, j) - l.row(j).head(j).squaredNorm();
    Require(pivot >= psd_floor, ErrorCode::kNotPsd,
            "matrix is not positive semi-definite");
    if (pivot <= singular) return kNegInf;
    const double root = std::sqrt(pivot);
    l(j, j) = root;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      l(i, j) = (m(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / root;
    }
    log_det += std::log(pivot);
  }
  return log_det;
}

double LogVolume(const PointSet& points, std::span<const PointId> ids,
                 std::span<const double> weights) {
  if (static_cast<int>(ids.size()) <= points.dim()) {
    return LogDetPsd(InnerProducts(points, ids, weights));
  }
  Require(weights.empty() || weights.size() == ids.size(),
          ErrorCode::kInvalidArgument, "weights must match ids");
  const int d = points.dim();
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    g.selfadjointView<Eigen::Lower>().rankUpdate(points.vec(ids[i]), w);
  }
  g.triangularView<Eigen::StrictlyUpper>() =
      g.transpose().triangularView<Eigen::StrictlyUpper>();
  return LogDetPsd(g);
}

}  // namespace detmax
