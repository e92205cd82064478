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

#include "core/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace detmax {
namespace {

const json& Field(const json& obj, const char* key) {
  Require(obj.is_object(), ErrorCode::kParse,
          std::string("expected an object holding '") + key + "'");
  auto it = obj.find(key);
  Require(it != obj.end(), ErrorCode::kParse,
          std::string("missing field '") + key + "'");
  return *it;
}

std::int64_t IntField(const json& obj, const char* key) {
  const json& v = Field(obj, key);
  Require(v.is_number_integer(), ErrorCode::kParse,
          std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

double NumberField(const json& obj, const char* key) {
  const json& v = Field(obj, key);
  Require(v.is_number(), ErrorCode::kParse,
          std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

template <typename T>
T ValueOr(const json& obj, const char* key, T fallback) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("field '") + key + "': " + e.what());
  }
}

std::vector<std::int64_t> IntArray(const json& v, const char* what) {
  Require(v.is_array(), ErrorCode::kParse,
          std::string(what) + " must be an array");
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const json& x : v) {
    Require(x.is_number_integer(), ErrorCode::kParse,
            std::string(what) + " must hold integers");
    out.push_back(x.get<std::int64_t>());
  }
  return out;
}

std::vector<int> CapArray(const json& v) {
  std::vector<int> caps;
  for (std::int64_t c : IntArray(v, "caps")) caps.push_back(static_cast<int>(c));
  return caps;
}

// Validates and builds the constraint, removing points of zero-cap classes
// and sets from `records` first.
Constraint ConstraintFromJson(const json& doc, int dim,
                              std::vector<PointRecord>& records,
                              PointSet& points, json& warnings) {
  const std::string type = Field(doc, "type").get<std::string>();
  if (type == "cardinality") {
    const std::int64_t k = IntField(doc, "k");
    Require(k >= 0, ErrorCode::kInvalidArgument, "k must be non-negative");
    points = PointSet(dim, std::move(records));
    return CardinalityConstraint{static_cast<int>(k)};
  }
  if (type == "partition") {
    const std::vector<int> caps = CapArray(Field(doc, "caps"));
    std::vector<PointRecord> kept;
    std::map<int, int> stripped;
    for (PointRecord& r : records) {
      if (r.group && *r.group >= 0 &&
          *r.group < static_cast<int>(caps.size()) &&
          caps[static_cast<std::size_t>(*r.group)] == 0) {
        ++stripped[*r.group];
        continue;
      }
      kept.push_back(std::move(r));
    }
    for (const auto& [group, count] : stripped) {
      warnings.push_back("stripped " + std::to_string(count) +
                         " points of zero-cap class " + std::to_string(group));
    }
    points = PointSet(dim, std::move(kept));
    return MakePartitionConstraint(caps, points);
  }
  if (type == "laminar") {
    const json& sets_doc = Field(doc, "sets");
    Require(sets_doc.is_array(), ErrorCode::kParse, "sets must be an array");
    std::vector<LaminarSet> sets;
    std::set<PointId> stripped;
    for (const json& f : sets_doc) {
      LaminarSet set;
      set.ids = IntArray(Field(f, "ids"), "set ids");
      set.cap = static_cast<int>(IntField(f, "cap"));
      Require(set.cap >= 0, ErrorCode::kInvalidArgument,
              "laminar caps must be non-negative");
      if (set.cap == 0) {
        stripped.insert(set.ids.begin(), set.ids.end());
        warnings.push_back("stripped zero-cap laminar set of " +
                           std::to_string(set.ids.size()) + " ids");
        continue;
      }
      sets.push_back(std::move(set));
    }
    if (!stripped.empty()) {
      std::vector<PointRecord> kept;
      for (PointRecord& r : records) {
        if (!stripped.count(r.id)) kept.push_back(std::move(r));
      }
      records = std::move(kept);
      std::vector<LaminarSet> remaining;
      for (LaminarSet& set : sets) {
        IdSet ids;
        for (PointId id : set.ids) {
          if (!stripped.count(id)) ids.push_back(id);
        }
        if (ids.empty()) {
          warnings.push_back("dropped a laminar set emptied by stripping");
          continue;
        }
        set.ids = std::move(ids);
        remaining.push_back(std::move(set));
      }
      sets = std::move(remaining);
    }
    points = PointSet(dim, std::move(records));
    LaminarConstraint laminar = MakeLaminarConstraint(std::move(sets), points);
    for (const std::string& w : laminar.warnings) warnings.push_back(w);
    return laminar;
  }
  Fail(ErrorCode::kParse, "unknown constraint type '" + type + "'");
}

std::string FormatDouble(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

json LogValueToJson(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

double LogValueFromJson(const json& value) {
  if (value.is_null()) return kNegInf;
  Require(value.is_number(), ErrorCode::kParse, "log value must be a number");
  return value.get<double>();
}

json ParseJson(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

json ConstraintToJson(const Constraint& constraint) {
  json out;
  out["type"] = ConstraintTypeName(constraint);
  if (const auto* c = std::get_if<CardinalityConstraint>(&constraint)) {
    out["k"] = c->k;
  } else if (const auto* p = std::get_if<PartitionConstraint>(&constraint)) {
    out["caps"] = p->caps;
  } else {
    json sets = json::array();
    for (const LaminarSet& f : std::get<LaminarConstraint>(constraint).sets) {
      sets.push_back({{"ids", f.ids}, {"cap", f.cap}});
    }
    out["sets"] = std::move(sets);
  }
  return out;
}

json InstanceToJson(const Instance& instance) {
  json points = json::array();
  for (const PointRecord& r : instance.points.Records()) {
    json p;
    p["id"] = r.id;
    p["group"] = r.group ? json(*r.group) : json(nullptr);
    p["coords"] = r.coords;
    points.push_back(std::move(p));
  }
  json out;
  out["dim"] = instance.points.dim();
  out["points"] = std::move(points);
  out["constraint"] = ConstraintToJson(instance.constraint);
  out["meta"] = instance.meta;
  return out;
}

Instance InstanceFromJson(const json& doc) {
  try {
    Require(doc.is_object(), ErrorCode::kParse,
            "instance document must be an object");
    const std::int64_t dim = IntField(doc, "dim");
    Require(dim >= 1 && dim <= 64, ErrorCode::kInvalidArgument,
            "dim must lie in [1, 64]");
    const json& points_doc = Field(doc, "points");
    Require(points_doc.is_array(), ErrorCode::kParse, "points must be an array");
    std::vector<PointRecord> records;
    records.reserve(points_doc.size());
    for (const json& p : points_doc) {
      PointRecord r;
      r.id = IntField(p, "id");
      auto g = p.find("group");
      if (g != p.end() && !g->is_null()) {
        Require(g->is_number_integer(), ErrorCode::kParse,
                "group must be an integer or null");
        r.group = g->get<int>();
      }
      const json& coords = Field(p, "coords");
      Require(coords.is_array(), ErrorCode::kParse, "coords must be an array");
      for (const json& x : coords) {
        Require(x.is_number(), ErrorCode::kParse, "coords must be numbers");
        r.coords.push_back(x.get<double>());
      }
      records.push_back(std::move(r));
    }

    Instance out;
    if (auto m = doc.find("meta"); m != doc.end() && m->is_object()) {
      out.meta = *m;
    }
    json warnings = json::array();
    out.constraint = ConstraintFromJson(Field(doc, "constraint"),
                                        static_cast<int>(dim), records,
                                        out.points, warnings);
    if (!warnings.empty()) out.meta["warnings"] = std::move(warnings);
    return out;
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed instance: ") + e.what());
  }
}

Instance InstanceFromCsv(const std::string& text, const json& constraint) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    if (!Trim(line).empty()) header = SplitCsvLine(Trim(line));
  }
  Require(header.size() >= 3 && Trim(header[0]) == "id" &&
              Trim(header[1]) == "group",
          ErrorCode::kParse, "CSV header must read id,group,c0,...");
  const int dim = static_cast<int>(header.size()) - 2;
  for (int c = 0; c < dim; ++c) {
    Require(Trim(header[static_cast<std::size_t>(c + 2)]) ==
                "c" + std::to_string(c),
            ErrorCode::kParse, "CSV coordinate columns must be c0..c{d-1}");
  }
  std::vector<PointRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(Trim(line));
    Require(cells.size() == header.size(), ErrorCode::kDimensionMismatch,
            "CSV line " + std::to_string(line_no) + " has " +
                std::to_string(cells.size()) + " cells, expected " +
                std::to_string(header.size()));
    PointRecord r;
    try {
      std::size_t used = 0;
      r.id = std::stoll(Trim(cells[0]), &used);
      Require(used == Trim(cells[0]).size(), ErrorCode::kParse, "bad id");
      if (!Trim(cells[1]).empty()) r.group = std::stoi(Trim(cells[1]));
      for (int c = 0; c < dim; ++c) {
        r.coords.push_back(std::stod(Trim(cells[static_cast<std::size_t>(c + 2)])));
      }
    } catch (const std::logic_error&) {
      Fail(ErrorCode::kParse,
           "CSV line " + std::to_string(line_no) + " holds a malformed number");
    }
    records.push_back(std::move(r));
  }
  Instance out;
  json warnings = json::array();
  try {
    out.constraint =
        ConstraintFromJson(constraint, dim, records, out.points, warnings);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed constraint: ") + e.what());
  }
  if (!warnings.empty()) out.meta["warnings"] = std::move(warnings);
  return out;
}

std::string PointsToCsv(const PointSet& points) {
  std::string out = "id,group";
  for (int c = 0; c < points.dim(); ++c) out += ",c" + std::to_string(c);
  out += "\n";
  for (const PointRecord& r : points.Records()) {
    out += std::to_string(r.id) + ",";
    if (r.group) out += std::to_string(*r.group);
    for (double x : r.coords) out += "," + FormatDouble(x);
    out += "\n";
  }
  return out;
}

json CoresetToJson(const CoresetResult& coreset) {
  json out;
  out["regime"] = RegimeName(coreset.regime);
  out["ids"] = coreset.ids;
  out["layers"] = coreset.Layers();
  out["declared_bound"] = coreset.declared_bound;
  out["zeta"] = coreset.zeta;
  out["ell"] = coreset.ell;
  out["constraint_type"] = coreset.constraint_type;
  out["approx_exponent"] = coreset.approx_exponent;
  out["ridge"] = coreset.ridge;
  out["source"] = coreset.source;
  out["free"] = coreset.free_ids;
  return out;
}

CoresetResult CoresetFromJson(const json& doc) {
  try {
    CoresetResult out;
    out.regime = ParseRegime(Field(doc, "regime").get<std::string>());
    out.ids = MakeIdSet(IntArray(Field(doc, "ids"), "ids"));
    for (const json& layer : Field(doc, "layers")) {
      out.flat_layers.push_back(MakeIdSet(IntArray(layer, "layer")));
    }
    out.declared_bound = Field(doc, "declared_bound").get<std::uint64_t>();
    out.zeta = NumberField(doc, "zeta");
    out.ell = static_cast<int>(IntField(doc, "ell"));
    out.constraint_type = ValueOr<std::string>(doc, "constraint_type", "");
    out.approx_exponent = ValueOr<double>(
        doc, "approx_exponent", ApproximationExponent(out.ell, out.zeta));
    out.ridge = ValueOr<bool>(doc, "ridge", false);
    if (auto it = doc.find("source"); it != doc.end()) {
      out.source = MakeIdSet(IntArray(*it, "source"));
    } else {
      out.source = out.ids;
    }
    if (auto it = doc.find("free"); it != doc.end()) {
      out.free_ids = MakeIdSet(IntArray(*it, "free"));
    }
    return out;
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed coreset: ") + e.what());
  }
}

json SolveResultToJson(const SolveResult& result) {
  json out;
  out["set"] = result.set;
  out["log_value"] = LogValueToJson(result.log_value);
  out["feasible"] = result.feasible;
  out["method"] = SolveMethodName(result.method);
  return out;
}

Instance GenerateInstance(const json& spec) {
  try {
    const std::string generator = Field(spec, "generator").get<std::string>();
    if (generator == "random") {
      RandomSpec r;
      r.n = static_cast<int>(IntField(spec, "n"));
      r.d = static_cast<int>(IntField(spec, "d"));
      r.constraint = ValueOr<std::string>(spec, "constraint", "cardinality");
      r.k = ValueOr<int>(spec, "k", 0);
      r.caps = ValueOr<std::vector<int>>(spec, "caps", {});
      r.laminar_shape = ValueOr<std::string>(spec, "laminar_shape", "flat");
      r.integer_grid = ValueOr<bool>(spec, "integer_grid", false);
      r.seed = ValueOr<std::uint64_t>(spec, "seed", 0);
      return RandomInstance(r);
    }
    if (generator == "lb_low_dim") {
      const std::vector<int> caps = CapArray(Field(spec, "caps"));
      const int d = static_cast<int>(IntField(spec, "d"));
      const double big_m = ValueOr<double>(spec, "M", 1e3);
      if (auto it = spec.find("subset"); it != spec.end() && !it->is_null()) {
        const IdSet subset = MakeIdSet(IntArray(*it, "subset"));
        return LowDimLowerBound(caps, d, big_m, &subset).Combined();
      }
      return LowDimLowerBound(caps, d, big_m).Combined();
    }
    if (generator == "lb_high_dim") {
      return HighDimLowerBound(static_cast<int>(IntField(spec, "k")),
                               static_cast<int>(IntField(spec, "d")),
                               Field(spec, "scales").get<std::vector<double>>(),
                               ValueOr<double>(spec, "M", 1e5),
                               ValueOr<int>(spec, "probe", 1))
          .Combined();
    }
    if (generator == "hard") {
      return MakeHardInstance(static_cast<int>(IntField(spec, "d")),
                              NumberField(spec, "beta"),
                              static_cast<int>(IntField(spec, "k")),
                              ValueOr<std::uint64_t>(spec, "seed", 0),
                              ValueOr<double>(spec, "M", 1e3))
          .instance;
    }
    Fail(ErrorCode::kInvalidArgument, "unknown generator '" + generator + "'");
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed generator spec: ") + e.what());
  }
}

}  // namespace detmax
