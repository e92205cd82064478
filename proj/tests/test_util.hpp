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


#ifndef DETMAX_TESTS_TEST_UTIL_HPP_
#define DETMAX_TESTS_TEST_UTIL_HPP_

#include <initializer_list>
#include <optional>
#include <vector>

#include "core/geometry.hpp"

namespace testutil {

// Points with ids 0, 1, ... and no groups.
inline detmax::PointSet Points(
    int dim, std::initializer_list<std::vector<double>> coords) {
  std::vector<detmax::PointRecord> records;
  detmax::PointId id = 0;
  for (const auto& c : coords) records.push_back({id++, std::nullopt, c});
  return detmax::PointSet(dim, std::move(records));
}

// Points with ids 0, 1, ... and the given groups.
inline detmax::PointSet Grouped(int dim, std::vector<int> groups,
                                std::vector<std::vector<double>> coords) {
  std::vector<detmax::PointRecord> records;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    records.push_back({static_cast<detmax::PointId>(i), groups[i], coords[i]});
  }
  return detmax::PointSet(dim, std::move(records));
}

}  // namespace testutil

#endif  // DETMAX_TESTS_TEST_UTIL_HPP_
