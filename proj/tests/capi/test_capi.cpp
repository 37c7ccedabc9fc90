// Copyright 2026 The megame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "megame/megame.h"

#include <algorithm>
#include <memory>
#include <string>
#include <thread>

namespace {

struct ScenarioDeleter {
  void operator()(meg_scenario* s) const { meg_scenario_free(s); }
};
using Scenario = std::unique_ptr<meg_scenario, ScenarioDeleter>;

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  meg_string_free(s);
  return out;
}

Scenario builtin(const char* name) {
  meg_scenario* s = nullptr;
  REQUIRE(meg_scenario_builtin(name, &s) == MEG_OK);
  return Scenario(s);
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("status names") {
  CHECK(std::string(meg_status_name(MEG_OK)) == "ok");
  CHECK(std::string(meg_status_name(MEG_ERR_NOT_NORMALIZED)) == "not_normalized");
  CHECK(std::string(meg_status_name(static_cast<meg_status>(99))) == "unknown");
}

TEST_CASE("builtin names") {
  char* out = nullptr;
  REQUIRE(meg_builtin_names(&out) == MEG_OK);
  CHECK(take(out) == "lepen\nmarch_for_science\nsheehan\ntruth_toy\n");
  CHECK(meg_builtin_names(nullptr) == MEG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("loading scenarios") {
  meg_scenario* s = nullptr;
  CHECK(meg_scenario_builtin("nope", &s) == MEG_ERR_UNKNOWN_NAME);
  CHECK(s == nullptr);
  CHECK(contains(meg_last_error(), "sheehan"));

  CHECK(meg_scenario_load_file(MEGAME_FIXTURES "/prior_deficit.json", &s) ==
        MEG_ERR_NOT_NORMALIZED);
  CHECK(contains(meg_last_error(), "deficit 1/100"));
  CHECK(meg_scenario_load_file(MEGAME_FIXTURES "/missing.json", &s) == MEG_ERR_IO);
  CHECK(meg_scenario_load_json("{\"name\": ", &s) == MEG_ERR_PARSE);
  CHECK(contains(meg_last_error(), "line 1"));
  CHECK(meg_scenario_resolve("no-such-thing", &s) == MEG_ERR_IO);

  REQUIRE(meg_scenario_load_file(MEGAME_FIXTURES "/minimal.json", &s) == MEG_OK);
  Scenario minimal(s);
  char* name = nullptr;
  REQUIRE(meg_scenario_name(minimal.get(), &name) == MEG_OK);
  CHECK(take(name) == "minimal");

  CHECK(meg_scenario_builtin(nullptr, &s) == MEG_ERR_INVALID_ARGUMENT);
  CHECK(meg_scenario_builtin("sheehan", nullptr) == MEG_ERR_INVALID_ARGUMENT);
  meg_scenario_free(nullptr);
}

TEST_CASE("json round trip") {
  for (const char* n : {"sheehan", "lepen", "march_for_science", "truth_toy"}) {
    auto s = builtin(n);
    char* text = nullptr;
    REQUIRE(meg_scenario_to_json(s.get(), &text) == MEG_OK);
    const std::string first = take(text);
    meg_scenario* again = nullptr;
    REQUIRE(meg_scenario_load_json(first.c_str(), &again) == MEG_OK);
    Scenario reloaded(again);
    REQUIRE(meg_scenario_to_json(reloaded.get(), &text) == MEG_OK);
    CHECK(take(text) == first);
  }
}

TEST_CASE("run") {
  auto s = builtin("sheehan");
  char* out = nullptr;
  REQUIRE(meg_run(s.get(), "tj_U", 2, MEG_FORMAT_CSV, &out) == MEG_OK);
  const std::string csv = take(out);
  CHECK(line_count(csv) == 7);
  CHECK(contains(csv, "2,tj_U,t_H,2,5,0.4\n"));
  REQUIRE(meg_run(s.get(), nullptr, -1, MEG_FORMAT_JSONL, &out) == MEG_OK);
  CHECK(line_count(take(out)) == 16);
  CHECK(meg_run(s.get(), "tj_U", 9, MEG_FORMAT_CSV, &out) == MEG_ERR_SCRIPT);
  CHECK(out == nullptr);
  CHECK(meg_run(s.get(), "tj_Z", 1, MEG_FORMAT_CSV, &out) != MEG_OK);
  CHECK(meg_run(s.get(), "tj_U", 1, static_cast<meg_format>(7), &out) ==
        MEG_ERR_INVALID_ARGUMENT);
  CHECK(meg_run(nullptr, "tj_U", 1, MEG_FORMAT_CSV, &out) == MEG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("checks set the positive flag") {
  auto sheehan = builtin("sheehan");
  auto lepen = builtin("lepen");
  char* out = nullptr;
  int positive = -1;

  REQUIRE(meg_check(lepen.get(), MEG_CHECK_DOGWHISTLE, nullptr, &out, &positive) == MEG_OK);
  CHECK(positive == 1);
  CHECK(contains(take(out), "\"loaded_history\": 1"));

  meg_check_options opts{"tj_U", "rho", -1, -1};
  REQUIRE(meg_check(sheehan.get(), MEG_CHECK_AMBIGUITY, &opts, &out, &positive) == MEG_OK);
  meg_string_free(out);
  CHECK(positive == 1);

  opts = {"tj_B", nullptr, -1, 2};
  REQUIRE(meg_check(sheehan.get(), MEG_CHECK_DISINTERESTED, &opts, &out, &positive) ==
          MEG_OK);
  meg_string_free(out);
  CHECK(positive == 0);

  REQUIRE(meg_check(sheehan.get(), MEG_CHECK_COHERENCE, nullptr, &out, &positive) == MEG_OK);
  meg_string_free(out);
  CHECK(positive == 1);

  opts = {nullptr, "lp", 7, -1};
  CHECK(meg_check(lepen.get(), MEG_CHECK_DOGWHISTLE, &opts, &out, &positive) ==
        MEG_ERR_INVALID_ARGUMENT);
  CHECK(meg_check(lepen.get(), static_cast<meg_check_kind>(9), nullptr, &out, &positive) ==
        MEG_ERR_INVALID_ARGUMENT);
  CHECK(meg_check(lepen.get(), MEG_CHECK_COHERENCE, nullptr, &out, nullptr) ==
        MEG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("enumerate, agree, solve, distance and dot") {
  auto sheehan = builtin("sheehan");
  auto toy = builtin("truth_toy");
  char* out = nullptr;

  REQUIRE(meg_enumerate(sheehan.get(), "rho", &out) == MEG_OK);
  CHECK(line_count(take(out)) == 8);
  CHECK(meg_enumerate(sheehan.get(), "nope", &out) == MEG_ERR_REFERENCE);

  int all = -1;
  REQUIRE(meg_agree(toy.get(), "1/10", 10, -1, &out, &all) == MEG_OK);
  meg_string_free(out);
  CHECK(all == 1);
  REQUIRE(meg_agree(toy.get(), "1/10", 10, 1, &out, &all) == MEG_OK);
  meg_string_free(out);
  CHECK(all == 0);
  CHECK(meg_agree(toy.get(), "1/10", 0, -1, &out, &all) == MEG_ERR_INVALID_ARGUMENT);
  CHECK(meg_agree(toy.get(), "abc", 10, -1, &out, &all) != MEG_OK);
  CHECK(meg_agree(toy.get(), "1/10", 10, 2, &out, &all) == MEG_ERR_INVALID_ARGUMENT);

  REQUIRE(meg_solve(toy.get(), nullptr, 2, &out) == MEG_OK);
  CHECK(contains(take(out), "\"verified\": true"));
  CHECK(meg_solve(toy.get(), nullptr, 3, &out) == MEG_ERR_SCRIPT);
  CHECK(meg_solve(toy.get(), nullptr, -1, &out) == MEG_ERR_INVALID_ARGUMENT);

  const char* refs[] = {"rho#0", "rho#7"};
  REQUIRE(meg_distance(sheehan.get(), refs, 2, &out) == MEG_OK);
  CHECK(contains(take(out), "\"exact\""));
  CHECK(meg_distance(sheehan.get(), nullptr, 1, &out) == MEG_ERR_INVALID_ARGUMENT);

  REQUIRE(meg_dot(sheehan.get(), "rho", 0, &out) == MEG_OK);
  CHECK(take(out).rfind("digraph", 0) == 0);
  CHECK(meg_dot(sheehan.get(), "rho", -1, &out) == MEG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("last error is per thread") {
  meg_scenario* s = nullptr;
  CHECK(meg_scenario_builtin("nope", &s) != MEG_OK);
  const std::string here = meg_last_error();
  std::string there;
  std::thread t([&] {
    meg_scenario* other = nullptr;
    meg_scenario_load_json("[", &other);
    there = meg_last_error();
  });
  t.join();
  CHECK(meg_last_error() == here);
  CHECK(there != here);
}
