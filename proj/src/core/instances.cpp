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

#include "core/instances.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "core/error.hpp"

namespace detmax {
namespace {

std::vector<double> UnitAxis(int d, int axis, double scale) {
  std::vector<double> v(static_cast<std::size_t>(d), 0.0);
  v[static_cast<std::size_t>(axis)] = scale;
  return v;
}

int Sum(const std::vector<int>& values) {
  int total = 0;
  for (int v : values) total += v;
  return total;
}

void RequireClassSizes(int n, const std::vector<int>& caps) {
  const int s = static_cast<int>(caps.size());
  for (int i = 0; i < s; ++i) {
    const int size = n / s + (i < n % s ? 1 : 0);
    Require(caps[static_cast<std::size_t>(i)] >= 1, ErrorCode::kInvalidArgument,
            "caps must be >= 1");
    Require(size >= caps[static_cast<std::size_t>(i)],
            ErrorCode::kInvalidArgument,
            "class " + std::to_string(i) + " has " + std::to_string(size) +
                " points but cap " +
                std::to_string(caps[static_cast<std::size_t>(i)]));
  }
}

}  // namespace

Instance RandomInstance(const RandomSpec& spec) {
  Require(spec.n >= 1 && spec.d >= 1, ErrorCode::kInvalidArgument,
          "random instances need n >= 1 and d >= 1");
  const bool partition = spec.constraint == "partition";
  const bool laminar = spec.constraint == "laminar";
  Require(partition || laminar || spec.constraint == "cardinality",
          ErrorCode::kInvalidArgument,
          "unknown constraint type '" + spec.constraint + "'");
  const bool classes =
      partition || (laminar && spec.laminar_shape == "flat");
  if (classes) {
    Require(!spec.caps.empty(), ErrorCode::kInvalidArgument,
            "class caps are required");
    RequireClassSizes(spec.n, spec.caps);
  }

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> grid(-3, 3);
  std::vector<PointRecord> records;
  records.reserve(static_cast<std::size_t>(spec.n));
  const int s = classes ? static_cast<int>(spec.caps.size()) : 1;
  for (int i = 0; i < spec.n; ++i) {
    PointRecord r;
    r.id = i;
    if (classes) r.group = i % s;
    r.coords.resize(static_cast<std::size_t>(spec.d));
    for (double& x : r.coords) {
      x = spec.integer_grid ? static_cast<double>(grid(rng)) : normal(rng);
    }
    records.push_back(std::move(r));
  }

  Instance out;
  out.points = PointSet(spec.d, std::move(records));
  out.meta["generator"] = "random";
  out.meta["seed"] = spec.seed;
  out.meta["n"] = spec.n;
  out.meta["d"] = spec.d;
  out.meta["integer_grid"] = spec.integer_grid;

  if (spec.constraint == "cardinality") {
    Require(spec.k >= 1 && spec.k <= spec.n, ErrorCode::kInvalidArgument,
            "cardinality instances need 1 <= k <= n");
    out.constraint = CardinalityConstraint{spec.k};
    return out;
  }
  if (partition) {
    out.constraint = MakePartitionConstraint(spec.caps, out.points);
    return out;
  }

  std::vector<LaminarSet> sets;
  const IdSet& all = out.points.ids();
  if (spec.laminar_shape == "flat") {
    for (int c = 0; c < s; ++c) {
      LaminarSet f;
      for (int i = c; i < spec.n; i += s) f.ids.push_back(i);
      f.cap = spec.caps[static_cast<std::size_t>(c)];
      sets.push_back(std::move(f));
    }
  } else if (spec.laminar_shape == "chain") {
    Require(spec.caps.size() == 2 && spec.caps[0] >= 1 &&
                spec.caps[0] < spec.caps[1],
            ErrorCode::kInvalidArgument,
            "chain families need caps (inner, outer) with 1 <= inner < outer");
    const int half = spec.n / 2;
    Require(half >= spec.caps[0] && spec.n >= spec.caps[1],
            ErrorCode::kInvalidArgument, "chain family caps exceed its sets");
    sets.push_back({IdSet(all.begin(), all.begin() + half), spec.caps[0]});
    sets.push_back({all, spec.caps[1]});
  } else if (spec.laminar_shape == "pairs") {
    Require(spec.k >= 2 && spec.n / 2 >= spec.k, ErrorCode::kInvalidArgument,
            "pair families need 2 <= k <= n / 2");
    for (int i = 0; i + 1 < spec.n; i += 2) sets.push_back({{i, i + 1}, 1});
    sets.push_back({all, spec.k});
  } else {
    Fail(ErrorCode::kInvalidArgument,
         "unknown laminar shape '" + spec.laminar_shape + "'");
  }
  out.meta["laminar_shape"] = spec.laminar_shape;
  out.constraint = MakeLaminarConstraint(std::move(sets), out.points);
  return out;
}

Instance LowerBoundInstance::Combined() const {
  Instance out;
  out.points = v.Merged(vprime);
  const auto& p = std::get<PartitionConstraint>(constraint);
  out.constraint = MakePartitionConstraint(p.caps, out.points);
  out.meta = meta;
  return out;
}

LowerBoundInstance LowDimLowerBound(const std::vector<int>& caps, int d,
                                    double big_m, const IdSet* subset) {
  const int s = static_cast<int>(caps.size());
  const int k = Sum(caps);
  Require(s >= 1 && d >= 1, ErrorCode::kInvalidArgument,
          "need at least one part and d >= 1");
  for (int c : caps) {
    Require(c >= 1, ErrorCode::kInvalidArgument, "caps must be >= 1");
  }
  Require(k <= d, ErrorCode::kInvalidArgument,
          "the low-dimension construction needs k <= d");
  Require(big_m > 0.0, ErrorCode::kInvalidArgument, "M must be positive");

  std::vector<PointRecord> base;
  for (int i = 0; i < s; ++i) {
    for (int t = 0; t < d; ++t) {
      base.push_back({static_cast<PointId>(i) * d + t, i, UnitAxis(d, t, 1.0)});
    }
  }

  // Deficient part and the k - 1 directions A that must span its kept points.
  int deficient = 0;
  std::vector<int> span_dirs;
  if (subset == nullptr) {
    for (int t = 0; t + 1 < k; ++t) span_dirs.push_back(t);
  } else {
    Require(static_cast<int>(subset->size()) < s * k,
            ErrorCode::kInvalidArgument, "the subset must have fewer than s k ids");
    deficient = -1;
    for (int i = 0; i < s && deficient < 0; ++i) {
      std::vector<int> dirs;
      for (PointId id : *subset) {
        Require(id >= 0 && id < static_cast<PointId>(s) * d,
                ErrorCode::kUnknownId, "subset id outside V");
        if (id / d == i) dirs.push_back(static_cast<int>(id % d));
      }
      if (static_cast<int>(dirs.size()) <= k - 1) {
        deficient = i;
        span_dirs = dirs;
      }
    }
    for (int t = 0; static_cast<int>(span_dirs.size()) < k - 1; ++t) {
      if (std::find(span_dirs.begin(), span_dirs.end(), t) == span_dirs.end()) {
        span_dirs.push_back(t);
      }
    }
    std::sort(span_dirs.begin(), span_dirs.end());
  }
  int missing = 0;
  while (std::find(span_dirs.begin(), span_dirs.end(), missing) !=
         span_dirs.end()) {
    ++missing;
  }

  std::vector<PointRecord> extra;
  std::size_t next_dir =
      static_cast<std::size_t>(caps[static_cast<std::size_t>(deficient)] - 1);
  PointId next_id = static_cast<PointId>(s) * d;
  for (int j = 0; j < s; ++j) {
    if (j == deficient) continue;
    for (int c = 0; c < caps[static_cast<std::size_t>(j)]; ++c) {
      extra.push_back(
          {next_id++, j, UnitAxis(d, span_dirs[next_dir++], big_m)});
    }
  }

  LowerBoundInstance out;
  out.v = PointSet(d, std::move(base));
  out.vprime = PointSet(d, std::move(extra));
  out.constraint =
      MakePartitionConstraint(caps, out.v.Merged(out.vprime));
  out.meta["generator"] = "lb_low_dim";
  out.meta["caps"] = caps;
  out.meta["d"] = d;
  out.meta["M"] = big_m;
  out.meta["deficient_part"] = deficient;
  out.meta["span_directions"] = span_dirs;
  out.meta["missing_direction"] = missing;
  out.meta["v_ids"] = out.v.ids();
  out.meta["vprime_ids"] = out.vprime.ids();
  return out;
}

LowerBoundInstance HighDimLowerBound(int k, int d,
                                     const std::vector<double>& scales,
                                     double big_m, int probe) {
  Require(d >= 1 && k >= d, ErrorCode::kInvalidArgument,
          "the high-dimension construction needs k >= d >= 1");
  Require(static_cast<int>(scales.size()) == k, ErrorCode::kInvalidArgument,
          "need one scale per part");
  Require(probe >= 1 && probe <= d, ErrorCode::kInvalidArgument,
          "probe index must lie in [1, d]");
  for (int i = 0; i < k; ++i) {
    Require(scales[static_cast<std::size_t>(i)] > 0.0,
            ErrorCode::kInvalidArgument, "scales must be positive");
    if (i > 0) {
      Require(scales[static_cast<std::size_t>(i)] <=
                  scales[static_cast<std::size_t>(i - 1)],
              ErrorCode::kInvalidArgument, "scales must be non-increasing");
    }
  }
  if (k > d) {
    Require(scales[static_cast<std::size_t>(d - 1)] >
                scales[static_cast<std::size_t>(d)],
            ErrorCode::kInvalidArgument, "need M_d > M_(d+1)");
  }
  Require(big_m > scales[0], ErrorCode::kInvalidArgument, "need M > M_1");

  std::vector<PointRecord> base;
  for (int i = 0; i < k; ++i) {
    for (int t = 0; t < d; ++t) {
      base.push_back({static_cast<PointId>(i) * d + t, i,
                      UnitAxis(d, t, scales[static_cast<std::size_t>(i)])});
    }
  }
  std::vector<PointRecord> extra;
  PointId next_id = static_cast<PointId>(k) * d;
  for (int t = 0; t < d; ++t) {
    if (t == probe - 1) continue;
    extra.push_back({next_id++, t, UnitAxis(d, t, big_m)});
  }

  LowerBoundInstance out;
  out.v = PointSet(d, std::move(base));
  out.vprime = PointSet(d, std::move(extra));
  out.constraint = MakePartitionConstraint(std::vector<int>(k, 1),
                                           out.v.Merged(out.vprime));
  out.meta["generator"] = "lb_high_dim";
  out.meta["k"] = k;
  out.meta["d"] = d;
  out.meta["scales"] = scales;
  out.meta["M"] = big_m;
  out.meta["probe"] = probe;
  out.meta["v_ids"] = out.v.ids();
  out.meta["vprime_ids"] = out.vprime.ids();
  return out;
}

HardInstance MakeHardInstance(int d, double beta, int k, std::uint64_t seed,
                              double big_m) {
  Require(d >= 4, ErrorCode::kInvalidArgument, "hard instances need d >= 4");
  Require(k >= d && k % d == 0, ErrorCode::kInvalidArgument,
          "k must be a positive multiple of d");
  const double log_d = std::log2(static_cast<double>(d));
  const double beta_max = d / (4.0 * log_d * log_d);
  Require(beta > 0.0 && beta <= beta_max, ErrorCode::kInvalidArgument,
          "beta must lie in (0, " + std::to_string(beta_max) + "]");
  Require(big_m > 0.0, ErrorCode::kInvalidArgument, "M must be positive");

  HardInstance out;
  out.d = d;
  out.m = static_cast<int>(std::ceil(d / log_d));
  out.copies = k / d;
  out.beta = beta;
  out.big_m = big_m;
  out.dot_bound = 4.0 * std::sqrt(beta) * log_d / std::sqrt(double(d));
  Require(out.m < d, ErrorCode::kInvalidArgument, "need m < d");
  const double uncapped = std::round(std::pow(double(d), beta + 2.0));
  const int ground = static_cast<int>(std::min<double>(uncapped, kHardGroundCap));
  const int dim_g = out.m + 1;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  out.g.resize(dim_g, ground);
  int accepted = 0;
  for (int attempt = 0; accepted < ground; ++attempt) {
    Require(attempt < kHardMaxAttempts, ErrorCode::kPrecondition,
            "rejection sampling for G exceeded " +
                std::to_string(kHardMaxAttempts) + " attempts");
    Eigen::VectorXd p(dim_g);
    for (int c = 0; c < dim_g; ++c) p(c) = normal(rng);
    const double norm = p.norm();
    if (norm == 0.0) continue;
    p /= norm;
    bool ok = true;
    for (int j = 0; j < accepted && ok; ++j) {
      ok = std::abs(out.g.col(j).dot(p)) <= out.dot_bound;
    }
    if (ok) out.g.col(accepted++) = p;
  }

  // Random rotation: QR of a Gaussian matrix with the sign ambiguity fixed.
  Eigen::MatrixXd gauss(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) gauss(r, c) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd r = qr.matrixQR();
  for (int c = 0; c < d; ++c) {
    if (r(c, c) < 0) q.col(c) *= -1.0;
  }
  out.rotation = q;

  std::uniform_int_distribution<int> pick(0, ground - 1);
  std::vector<PointRecord> records;
  PointId next_id = 0;
  auto emit = [&](const Eigen::VectorXd& x, int group, bool planted) {
    IdSet ids;
    const Eigen::VectorXd y = q * x;
    for (int c = 0; c < out.copies; ++c) {
      records.push_back(
          {next_id, group, std::vector<double>(y.data(), y.data() + d)});
      if (planted) out.planted_ids.push_back(next_id);
      ids.push_back(next_id++);
    }
    return ids;
  };

  const Eigen::VectorXd last = Eigen::VectorXd::Unit(dim_g, out.m);
  for (int i = 0; i < d - out.m; ++i) {
    const int planted = pick(rng);
    out.planted_index.push_back(planted);
    // Reflection that sends the planted vector of G to the last axis.
    const Eigen::VectorXd w = out.g.col(planted) - last;
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(dim_g, dim_g);
    if (w.norm() > 1e-15) h -= 2.0 * w * w.transpose() / w.squaredNorm();
    IdSet input;
    for (int j = 0; j < ground; ++j) {
      Eigen::VectorXd local = h * out.g.col(j);
      if (j == planted) local = last;
      Eigen::VectorXd x = Eigen::VectorXd::Zero(d);
      x.head(out.m) = local.head(out.m);
      x(out.m + i) = local(out.m);
      input = Union(input, emit(x, i, j == planted));
    }
    out.inputs.push_back(std::move(input));
  }
  for (int i = 0; i < out.m; ++i) {
    out.inputs.push_back(
        emit(big_m * Eigen::VectorXd::Unit(d, i), d - out.m + i, false));
  }

  out.instance.points = PointSet(d, std::move(records));
  out.instance.constraint = CardinalityConstraint{k};
  nlohmann::json& meta = out.instance.meta;
  meta["generator"] = "hard";
  meta["d"] = d;
  meta["k"] = k;
  meta["m"] = out.m;
  meta["beta"] = beta;
  meta["seed"] = seed;
  meta["M"] = big_m;
  meta["copies"] = out.copies;
  meta["ground_size"] = ground;
  meta["ground_size_uncapped"] = uncapped;
  meta["ground_cap"] = kHardGroundCap;
  meta["dot_bound"] = out.dot_bound;
  meta["planted_index"] = out.planted_index;
  meta["planted_ids"] = out.planted_ids;
  meta["inputs"] = out.inputs;
  return out;
}

}  // namespace detmax
