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

// JSON and CSV documents. Non-finite log values are written as null.

#ifndef DETMAX_CORE_SERIALIZATION_HPP_
#define DETMAX_CORE_SERIALIZATION_HPP_

#include <string>

#include "json.hpp"

#include "core/coreset.hpp"
#include "core/instances.hpp"
#include "core/matroid.hpp"
#include "core/solver.hpp"

namespace detmax {

using nlohmann::json;

json LogValueToJson(double value);
double LogValueFromJson(const json& value);

// Parses text, mapping syntax errors to kParse.
json ParseJson(const std::string& text);

json ConstraintToJson(const Constraint& constraint);
json InstanceToJson(const Instance& instance);

// Builds an instance from the instance schema. Partition classes and laminar
// sets with cap 0 are stripped together with their points; laminar repairs
// and strips are listed under meta.warnings. Schema violations throw kParse.
Instance InstanceFromJson(const json& doc);

// Points from `id,group,c0,...` rows (empty group = none) and a constraint
// object in the JSON constraint schema.
Instance InstanceFromCsv(const std::string& text, const json& constraint);
std::string PointsToCsv(const PointSet& points);

json CoresetToJson(const CoresetResult& coreset);
// Restores ids, source, layers and metadata; construction trees are not
// stored, so the result cannot drive exchange queries.
CoresetResult CoresetFromJson(const json& doc);

json SolveResultToJson(const SolveResult& result);

// {"generator": "random" | "lb_low_dim" | "lb_high_dim" | "hard", ...}.
// Lower-bound generators return V and V' combined.
Instance GenerateInstance(const json& spec);

}  // namespace detmax

#endif  // DETMAX_CORE_SERIALIZATION_HPP_
