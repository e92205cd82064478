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


#include "detmax/detmax.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "core/coreset.hpp"
#include "core/error.hpp"
#include "core/harness.hpp"
#include "core/serialization.hpp"
#include "core/solver.hpp"

struct detmax_instance {
  detmax::Instance value;
};

struct detmax_coreset {
  detmax::CoresetResult value;
};

namespace {

thread_local std::string last_error;

detmax_status ToStatus(detmax::ErrorCode code) {
  using detmax::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return DETMAX_INVALID_ARGUMENT;
    case ErrorCode::kParse: return DETMAX_PARSE;
    case ErrorCode::kDimensionMismatch: return DETMAX_DIMENSION_MISMATCH;
    case ErrorCode::kDuplicateId: return DETMAX_DUPLICATE_ID;
    case ErrorCode::kUnknownId: return DETMAX_UNKNOWN_ID;
    case ErrorCode::kGuardExceeded: return DETMAX_GUARD_EXCEEDED;
    case ErrorCode::kPrecondition: return DETMAX_PRECONDITION;
    case ErrorCode::kInfeasible: return DETMAX_INFEASIBLE;
    case ErrorCode::kNotPsd: return DETMAX_NOT_PSD;
    case ErrorCode::kIterationLimit: return DETMAX_ITERATION_LIMIT;
    case ErrorCode::kOverlappingSources: return DETMAX_OVERLAPPING_SOURCES;
    case ErrorCode::kInternal: return DETMAX_INTERNAL;
  }
  return DETMAX_INTERNAL;
}

// Runs `body`, translating exceptions into a status and last_error.
template <typename F>
detmax_status Guard(F&& body) {
  try {
    last_error.clear();
    body();
    return DETMAX_OK;
  } catch (const detmax::Error& e) {
    last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DETMAX_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DETMAX_INTERNAL;
  }
}

void NotNull(const void* p, const char* what) {
  detmax::Require(p != nullptr, detmax::ErrorCode::kInvalidArgument,
                  std::string(what) + " must not be null");
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

char* Dump(const detmax::json& doc) { return CopyString(doc.dump(2) + "\n"); }

detmax::RunConfig ToRunConfig(const detmax_config* config) {
  detmax_config c;
  detmax_config_init(&c);
  if (config != nullptr) c = *config;
  detmax::RunConfig out;
  out.coreset.zeta = c.zeta;
  out.coreset.ridge = c.ridge != 0;
  switch (c.regime) {
    case DETMAX_REGIME_AUTO: break;
    case DETMAX_REGIME_LOWK: out.coreset.regime = detmax::Regime::kLowK; break;
    case DETMAX_REGIME_HIGHK: out.coreset.regime = detmax::Regime::kHighK; break;
    default:
      detmax::Fail(detmax::ErrorCode::kInvalidArgument, "unknown regime value");
  }
  detmax::Require(c.split == DETMAX_SPLIT_RANDOM ||
                      c.split == DETMAX_SPLIT_ADVERSARIAL,
                  detmax::ErrorCode::kInvalidArgument, "unknown split value");
  out.split = c.split == DETMAX_SPLIT_RANDOM ? detmax::SplitMode::kRandom
                                             : detmax::SplitMode::kAdversarial;
  out.parts = c.parts;
  out.seed = c.seed;
  out.identity_coreset = c.identity_coreset != 0;
  out.refine = c.refine != 0;
  return out;
}

}  // namespace

extern "C" {

void detmax_config_init(detmax_config* config) {
  if (config == nullptr) return;
  config->zeta = detmax::kDefaultZeta;
  config->regime = DETMAX_REGIME_AUTO;
  config->ridge = 0;
  config->parts = 1;
  config->seed = 0;
  config->split = DETMAX_SPLIT_RANDOM;
  config->identity_coreset = 0;
  config->refine = 0;
}

const char* detmax_version(void) { return "0.1.0"; }

const char* detmax_status_name(detmax_status status) {
  switch (status) {
    case DETMAX_OK: return "ok";
    case DETMAX_INVALID_ARGUMENT: return "invalid_argument";
    case DETMAX_PARSE: return "parse";
    case DETMAX_DIMENSION_MISMATCH: return "dimension_mismatch";
    case DETMAX_DUPLICATE_ID: return "duplicate_id";
    case DETMAX_UNKNOWN_ID: return "unknown_id";
    case DETMAX_GUARD_EXCEEDED: return "guard_exceeded";
    case DETMAX_PRECONDITION: return "precondition";
    case DETMAX_INFEASIBLE: return "infeasible";
    case DETMAX_NOT_PSD: return "not_psd";
    case DETMAX_ITERATION_LIMIT: return "iteration_limit";
    case DETMAX_OVERLAPPING_SOURCES: return "overlapping_sources";
    case DETMAX_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* detmax_last_error(void) { return last_error.c_str(); }

void detmax_string_free(char* s) { std::free(s); }

detmax_status detmax_instance_from_json(const char* json,
                                        detmax_instance** out) {
  return Guard([&] {
    NotNull(json, "json");
    NotNull(out, "out");
    *out = nullptr;
    auto inst = std::make_unique<detmax_instance>();
    inst->value = detmax::InstanceFromJson(detmax::ParseJson(json));
    *out = inst.release();
  });
}

detmax_status detmax_instance_from_csv(const char* csv,
                                       const char* constraint_json,
                                       detmax_instance** out) {
  return Guard([&] {
    NotNull(csv, "csv");
    NotNull(constraint_json, "constraint_json");
    NotNull(out, "out");
    *out = nullptr;
    auto inst = std::make_unique<detmax_instance>();
    inst->value =
        detmax::InstanceFromCsv(csv, detmax::ParseJson(constraint_json));
    *out = inst.release();
  });
}

detmax_status detmax_instance_generate(const char* spec_json,
                                       detmax_instance** out) {
  return Guard([&] {
    NotNull(spec_json, "spec_json");
    NotNull(out, "out");
    *out = nullptr;
    auto inst = std::make_unique<detmax_instance>();
    inst->value = detmax::GenerateInstance(detmax::ParseJson(spec_json));
    *out = inst.release();
  });
}

detmax_status detmax_instance_to_json(const detmax_instance* inst,
                                      char** out_json) {
  return Guard([&] {
    NotNull(inst, "instance");
    NotNull(out_json, "out_json");
    *out_json = Dump(detmax::InstanceToJson(inst->value));
  });
}

detmax_status detmax_instance_size(const detmax_instance* inst, size_t* n,
                                   int* dim) {
  return Guard([&] {
    NotNull(inst, "instance");
    if (n != nullptr) *n = inst->value.points.size();
    if (dim != nullptr) *dim = inst->value.points.dim();
  });
}

void detmax_instance_free(detmax_instance* inst) { delete inst; }

detmax_status detmax_log_volume(const detmax_instance* inst,
                                const int64_t* ids, size_t count,
                                double* out) {
  return Guard([&] {
    NotNull(inst, "instance");
    NotNull(out, "out");
    if (count > 0) NotNull(ids, "ids");
    const std::vector<detmax::PointId> set(ids, ids + count);
    *out = detmax::LogVolume(inst->value.points, set);
  });
}

detmax_status detmax_coreset_build(const detmax_instance* inst,
                                   const int64_t* ids, size_t count,
                                   const detmax_config* config,
                                   detmax_coreset** out) {
  return Guard([&] {
    NotNull(inst, "instance");
    NotNull(out, "out");
    *out = nullptr;
    const detmax::RunConfig run = ToRunConfig(config);
    std::vector<detmax::PointId> v;
    if (ids == nullptr) {
      v = inst->value.points.ids();
    } else {
      v.assign(ids, ids + count);
    }
    auto c = std::make_unique<detmax_coreset>();
    c->value = detmax::BuildCoreset(inst->value.points, v,
                                    inst->value.constraint, run.coreset);
    *out = c.release();
  });
}

detmax_status detmax_coreset_from_json(const char* json, detmax_coreset** out) {
  return Guard([&] {
    NotNull(json, "json");
    NotNull(out, "out");
    *out = nullptr;
    auto c = std::make_unique<detmax_coreset>();
    c->value = detmax::CoresetFromJson(detmax::ParseJson(json));
    *out = c.release();
  });
}

detmax_status detmax_coreset_to_json(const detmax_coreset* coreset,
                                     char** out_json) {
  return Guard([&] {
    NotNull(coreset, "coreset");
    NotNull(out_json, "out_json");
    *out_json = Dump(detmax::CoresetToJson(coreset->value));
  });
}

detmax_status detmax_coreset_ids(const detmax_coreset* coreset,
                                 const int64_t** ids, size_t* count) {
  return Guard([&] {
    NotNull(coreset, "coreset");
    NotNull(ids, "ids");
    NotNull(count, "count");
    *ids = coreset->value.ids.data();
    *count = coreset->value.ids.size();
  });
}

void detmax_coreset_free(detmax_coreset* coreset) { delete coreset; }

detmax_status detmax_compose(const detmax_coreset* const* coresets,
                             size_t count, char** out_json) {
  return Guard([&] {
    NotNull(out_json, "out_json");
    if (count > 0) NotNull(coresets, "coresets");
    std::vector<detmax::CoresetResult> parts;
    for (size_t i = 0; i < count; ++i) {
      NotNull(coresets[i], "coreset");
      parts.push_back(coresets[i]->value);
    }
    const detmax::IdSet ids = detmax::Compose(parts);
    *out_json = Dump({{"ids", ids}, {"size", ids.size()}});
  });
}

detmax_status detmax_solve(const detmax_instance* inst,
                           const detmax_coreset* coreset, const char* method,
                           char** out_json) {
  return Guard([&] {
    NotNull(inst, "instance");
    NotNull(method, "method");
    NotNull(out_json, "out_json");
    const detmax::PointSet& points = inst->value.points;
    detmax::Matroid matroid(inst->value.constraint, points);
    if (coreset != nullptr) matroid = matroid.Restricted(coreset->value.ids);
    detmax::SolveResult result;
    switch (detmax::ParseSolveMethod(method)) {
      case detmax::SolveMethod::kBruteForce:
        result = detmax::BruteForceOpt(points, matroid);
        break;
      case detmax::SolveMethod::kGreedy:
        result = detmax::GreedyConstrained(points, matroid);
        break;
      case detmax::SolveMethod::kLocalSearch:
        result = detmax::RefineBySwaps(
            points, matroid, detmax::GreedyConstrained(points, matroid),
            detmax::kDefaultZeta);
        break;
    }
    *out_json = Dump(detmax::SolveResultToJson(result));
  });
}

detmax_status detmax_run(const detmax_instance* inst,
                         const detmax_config* config, char** out_json,
                         char** out_csv) {
  return Guard([&] {
    NotNull(inst, "instance");
    NotNull(out_json, "out_json");
    const detmax::RunReport report =
        detmax::RunDistributed(inst->value, ToRunConfig(config));
    std::string json = detmax::RunReportToJson(report).dump(2) + "\n";
    std::string csv = detmax::RunReportCsv(report);
    *out_json = CopyString(json);
    if (out_csv != nullptr) *out_csv = CopyString(csv);
  });
}

detmax_status detmax_bench(int d, int k, const int* n_list, size_t count,
                           uint64_t seed, int repeats, char** out_csv) {
  return Guard([&] {
    NotNull(out_csv, "out_csv");
    if (count > 0) NotNull(n_list, "n_list");
    const std::vector<int> ns(n_list, n_list + count);
    *out_csv =
        CopyString(detmax::BenchCsv(detmax::BenchScaling(d, k, ns, seed, repeats)));
  });
}

detmax_status detmax_verify(const char* suite, int trials, uint64_t seed,
                            char** out_json) {
  return Guard([&] {
    NotNull(suite, "suite");
    NotNull(out_json, "out_json");
    if (std::string(suite) != "all") {
      *out_json = Dump(detmax::RunVerifySuite(suite, trials, seed));
      return;
    }
    detmax::json suites = detmax::json::array();
    bool passed = true;
    for (const std::string& name : detmax::VerifySuiteNames()) {
      suites.push_back(detmax::RunVerifySuite(name, trials, seed));
      passed = passed && suites.back()["passed"].get<bool>();
    }
    *out_json = Dump({{"suites", suites}, {"passed", passed}});
  });
}

}  // extern "C"
