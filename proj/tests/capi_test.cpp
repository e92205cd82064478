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


// Exercises the shared library through its C header only.

#include <cmath>
#include <cstring>
#include <string>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "json.hpp"

#include "detmax/detmax.h"

using nlohmann::json;

namespace {

const char* kInstance = R"({
  "dim": 2,
  "points": [{"id": 0, "group": 0, "coords": [1, 0]},
             {"id": 1, "group": 0, "coords": [0, 1]},
             {"id": 2, "group": 1, "coords": [1, 1]},
             {"id": 3, "group": 1, "coords": [2, -1]},
             {"id": 4, "group": 0, "coords": [3, 1]},
             {"id": 5, "group": 1, "coords": [-1, 2]}],
  "constraint": {"type": "partition", "caps": [1, 1]}})";

std::string Take(char* s) {
  std::string out = s;
  detmax_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(detmax_version()) == "0.1.0");
  CHECK(std::string(detmax_status_name(DETMAX_OK)) == "ok");
  CHECK(std::string(detmax_status_name(DETMAX_GUARD_EXCEEDED)) ==
        "guard_exceeded");
  detmax_config c;
  detmax_config_init(&c);
  CHECK(c.zeta == doctest::Approx(1.01));
  CHECK(c.parts == 1);
}

TEST_CASE("instance lifecycle and errors") {
  detmax_instance* inst = nullptr;
  REQUIRE(detmax_instance_from_json(kInstance, &inst) == DETMAX_OK);
  size_t n = 0;
  int dim = 0;
  CHECK(detmax_instance_size(inst, &n, &dim) == DETMAX_OK);
  CHECK(n == 6);
  CHECK(dim == 2);

  const int64_t ids[] = {0, 1};
  double v = 1.0;
  CHECK(detmax_log_volume(inst, ids, 2, &v) == DETMAX_OK);
  CHECK(v == doctest::Approx(0.0));
  const int64_t bad[] = {0, 42};
  CHECK(detmax_log_volume(inst, bad, 2, &v) == DETMAX_UNKNOWN_ID);
  CHECK(std::strlen(detmax_last_error()) > 0);

  char* text = nullptr;
  REQUIRE(detmax_instance_to_json(inst, &text) == DETMAX_OK);
  CHECK(json::parse(Take(text))["points"].size() == 6);
  detmax_instance_free(inst);

  detmax_instance* broken = nullptr;
  CHECK(detmax_instance_from_json("{", &broken) == DETMAX_PARSE);
  CHECK(broken == nullptr);
  CHECK(detmax_instance_from_json(nullptr, &broken) ==
        DETMAX_INVALID_ARGUMENT);
  CHECK(detmax_instance_from_csv("id,group,c0\n0,,1\n0,,2\n",
                                 R"({"type":"cardinality","k":1})",
                                 &broken) == DETMAX_DUPLICATE_ID);
}

TEST_CASE("coreset, compose, solve, run") {
  detmax_instance* inst = nullptr;
  REQUIRE(detmax_instance_from_json(kInstance, &inst) == DETMAX_OK);

  const int64_t left[] = {0, 1, 2};
  const int64_t right[] = {3, 4, 5};
  detmax_coreset* a = nullptr;
  detmax_coreset* b = nullptr;
  REQUIRE(detmax_coreset_build(inst, left, 3, nullptr, &a) == DETMAX_OK);
  REQUIRE(detmax_coreset_build(inst, right, 3, nullptr, &b) == DETMAX_OK);
  const int64_t* ids = nullptr;
  size_t count = 0;
  CHECK(detmax_coreset_ids(a, &ids, &count) == DETMAX_OK);
  CHECK(count >= 1);

  const detmax_coreset* both[] = {a, b};
  char* text = nullptr;
  REQUIRE(detmax_compose(both, 2, &text) == DETMAX_OK);
  const json composed = json::parse(Take(text));
  const detmax_coreset* twice[] = {a, a};
  CHECK(detmax_compose(twice, 2, &text) == DETMAX_OVERLAPPING_SOURCES);

  REQUIRE(detmax_coreset_to_json(a, &text) == DETMAX_OK);
  const std::string a_json = Take(text);
  detmax_coreset* restored = nullptr;
  REQUIRE(detmax_coreset_from_json(a_json.c_str(), &restored) == DETMAX_OK);
  REQUIRE(detmax_coreset_to_json(restored, &text) == DETMAX_OK);
  CHECK(Take(text) == a_json);
  detmax_coreset_free(restored);

  REQUIRE(detmax_solve(inst, nullptr, "brute", &text) == DETMAX_OK);
  const json full = json::parse(Take(text));
  CHECK(full["feasible"].get<bool>());
  REQUIRE(detmax_solve(inst, nullptr, "greedy", &text) == DETMAX_OK);
  CHECK(json::parse(Take(text))["log_value"].get<double>() <=
        full["log_value"].get<double>() + 1e-12);
  REQUIRE(detmax_solve(inst, a, "local", &text) == DETMAX_OK);
  Take(text);
  CHECK(detmax_solve(inst, nullptr, "nope", &text) == DETMAX_INVALID_ARGUMENT);

  detmax_config config;
  detmax_config_init(&config);
  config.parts = 2;
  config.seed = 7;
  char* csv = nullptr;
  REQUIRE(detmax_run(inst, &config, &text, &csv) == DETMAX_OK);
  const json report = json::parse(Take(text));
  CHECK(report.contains("timings"));
  CHECK(report["ratio"].get<double>() >= -1e-9);
  CHECK(Take(csv).find("constraint,") == 0);
  config.zeta = 1.0;
  CHECK(detmax_run(inst, &config, &text, nullptr) == DETMAX_INVALID_ARGUMENT);

  detmax_coreset_free(a);
  detmax_coreset_free(b);
  detmax_instance_free(inst);
}

TEST_CASE("generate, bench, verify") {
  detmax_instance* inst = nullptr;
  REQUIRE(detmax_instance_generate(
              R"({"generator": "random", "n": 20, "d": 3, "k": 2, "seed": 4})",
              &inst) == DETMAX_OK);
  detmax_instance_free(inst);
  CHECK(detmax_instance_generate(R"({"generator": "hard", "d": 4, "k": 6,
                                     "beta": 0.05})",
                                 &inst) == DETMAX_INVALID_ARGUMENT);

  const int ns[] = {40, 80};
  char* text = nullptr;
  REQUIRE(detmax_bench(2, 3, ns, 2, 1, 1, &text) == DETMAX_OK);
  const std::string csv = Take(text);
  CHECK(csv.find("n,seconds") == 0);
  REQUIRE(detmax_verify("sizes", 5, 1, &text) == DETMAX_OK);
  CHECK(json::parse(Take(text))["passed"].get<bool>());
  CHECK(detmax_verify("missing", 5, 1, &text) == DETMAX_INVALID_ARGUMENT);
}
