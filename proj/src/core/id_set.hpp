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

#ifndef DETMAX_CORE_ID_SET_HPP_
#define DETMAX_CORE_ID_SET_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iterator>
#include <span>
#include <vector>

namespace detmax {

using PointId = std::int64_t;

// Sorted, duplicate-free list of point ids. Functions that accept a plain
// span of ids document whether they require this form.
using IdSet = std::vector<PointId>;

inline bool IsStrictlyIncreasing(std::span<const PointId> ids) {
  return std::adjacent_find(ids.begin(), ids.end(),
                            std::greater_equal<PointId>()) == ids.end();
}

// Both helpers skip the sort for input that is already an id set.
inline IdSet MakeIdSet(std::span<const PointId> ids) {
  IdSet out(ids.begin(), ids.end());
  if (IsStrictlyIncreasing(ids)) return out;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool HasDuplicates(std::span<const PointId> ids) {
  if (IsStrictlyIncreasing(ids)) return false;
  IdSet sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

inline bool Contains(const IdSet& set, PointId id) {
  return std::binary_search(set.begin(), set.end(), id);
}

inline IdSet Union(const IdSet& a, const IdSet& b) {
  IdSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

inline IdSet Difference(const IdSet& a, const IdSet& b) {
  IdSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

inline IdSet Intersection(const IdSet& a, const IdSet& b) {
  IdSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline bool Disjoint(const IdSet& a, const IdSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

// S - out + in, kept sorted.
inline IdSet Swap(const IdSet& set, PointId out, PointId in) {
  IdSet result;
  result.reserve(set.size() + 1);
  for (PointId id : set) {
    if (id != out) result.push_back(id);
  }
  result.insert(std::upper_bound(result.begin(), result.end(), in), in);
  return result;
}

}  // namespace detmax

#endif  // DETMAX_CORE_ID_SET_HPP_
