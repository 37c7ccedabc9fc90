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

// Command-line front end. Data goes to standard output, diagnostics to
// standard error. Exit status is 0 on success or a positive check, 1 on a
// negative check and 2 on usage or input errors.

#include "megame/megame.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int kPositive = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

struct ScenarioDeleter {
  void operator()(meg_scenario* s) const { meg_scenario_free(s); }
};
using ScenarioPtr = std::unique_ptr<meg_scenario, ScenarioDeleter>;

int report_error(meg_status status) {
  std::cerr << "megame: " << meg_status_name(status) << ": " << meg_last_error() << "\n";
  return kInputError;
}

// Writes and frees a returned string.
void emit(char* text) {
  std::fputs(text, stdout);
  meg_string_free(text);
}

struct Options {
  std::string scenario;
  std::string jury_type;
  std::string ulf;
  long rounds = -1;
  std::string format = "csv";
  std::string kind;
  long grammar = -1;
  long max_length = 4;
  long max_rounds = 10;
  std::string grid = "1/10";
  int not_truth_interested = -1;
  long depth = 0;
  long completion = 0;
  std::vector<std::string> histories;
};

const char* or_null(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

int dispatch(const std::string& command, const Options& o) {
  if (command == "list") {
    char* out = nullptr;
    if (meg_status st = meg_builtin_names(&out)) return report_error(st);
    emit(out);
    return kPositive;
  }
  meg_scenario* raw = nullptr;
  if (meg_status st = meg_scenario_resolve(o.scenario.c_str(), &raw)) return report_error(st);
  ScenarioPtr s(raw);
  const meg_scenario* sc = s.get();
  char* out = nullptr;
  int positive = 1;
  meg_status st = MEG_OK;
  if (command == "run") {
    st = meg_run(sc, or_null(o.jury_type), o.rounds,
                 o.format == "csv" ? MEG_FORMAT_CSV : MEG_FORMAT_JSONL, &out);
  } else if (command == "check") {
    static const std::map<std::string, meg_check_kind> kinds = {
        {"disinterested", MEG_CHECK_DISINTERESTED},
        {"dogwhistle", MEG_CHECK_DOGWHISTLE},
        {"ambiguity", MEG_CHECK_AMBIGUITY},
        {"coherence", MEG_CHECK_COHERENCE}};
    const meg_check_options opts{or_null(o.jury_type), or_null(o.ulf), o.grammar, o.max_length};
    st = meg_check(sc, kinds.at(o.kind), &opts, &out, &positive);
  } else if (command == "enumerate") {
    st = meg_enumerate(sc, o.ulf.c_str(), &out);
  } else if (command == "agree") {
    st = meg_agree(sc, o.grid.c_str(), o.max_rounds, o.not_truth_interested, &out, &positive);
  } else if (command == "solve") {
    st = meg_solve(sc, or_null(o.jury_type), o.depth, &out);
  } else if (command == "distance") {
    std::vector<const char*> refs;
    for (const auto& h : o.histories) refs.push_back(h.c_str());
    st = meg_distance(sc, refs.data(), static_cast<int>(refs.size()), &out);
  } else if (command == "dot") {
    st = meg_dot(sc, o.ulf.c_str(), o.completion, &out);
  } else if (command == "export") {
    st = meg_scenario_to_json(sc, &out);
  }
  if (st != MEG_OK) return report_error(st);
  emit(out);
  return positive ? kPositive : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Message exchange games: belief trajectories, checks and solvers"};
  app.require_subcommand(1);
  Options o;

  auto scenario_arg = [&](CLI::App* sub) {
    sub->add_option("scenario", o.scenario, "Scenario file or packaged scenario name")
        ->required();
  };

  app.add_subcommand("list", "List packaged scenarios");

  auto* run = app.add_subcommand("run", "Emit belief trajectories");
  scenario_arg(run);
  run->add_option("--jury-type", o.jury_type, "Jury type (default: all)");
  run->add_option("--rounds", o.rounds, "Rounds after the prefix (default: whole script)")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl"}));

  auto* check = app.add_subcommand("check", "Check a property and report it as JSON");
  check->add_option("kind", o.kind, "Property to check")
      ->required()
      ->check(CLI::IsMember({"disinterested", "dogwhistle", "ambiguity", "coherence"}));
  scenario_arg(check);
  check->add_option("--jury-type", o.jury_type, "Jury type (default: all)");
  check->add_option("--ulf", o.ulf, "Underspecified form (default: all)");
  check->add_option("--grammar", o.grammar, "Grammar completion index")
      ->check(CLI::NonNegativeNumber);
  check->add_option("--max-length", o.max_length, "Longest play tried for indifference")
      ->check(CLI::NonNegativeNumber);

  auto* enumerate = app.add_subcommand("enumerate", "List every slot combination of a ULF");
  scenario_arg(enumerate);
  enumerate->add_option("--ulf", o.ulf, "Underspecified form")->required();

  auto* agree = app.add_subcommand("agree", "Sweep the agreement dynamics over a prior grid");
  scenario_arg(agree);
  agree->add_option("--max-rounds", o.max_rounds, "Round budget per instance");
  agree->add_option("--grid", o.grid, "Grid step as a rational");
  agree->add_option("--not-truth-interested", o.not_truth_interested,
                    "Player who ignores evidence")
      ->check(CLI::IsMember({0, 1}));

  auto* solve = app.add_subcommand("solve", "Solve the finite game over the scripted rounds");
  scenario_arg(solve);
  solve->add_option("--depth", o.depth, "Scripted rounds to expand")
      ->required()
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--jury-type", o.jury_type, "Jury type (default: first with conditions)");

  auto* distance = app.add_subcommand("distance", "Pairwise distances between histories");
  scenario_arg(distance);
  distance->add_option("histories", o.histories, "Histories as ULF or ULF#k");

  auto* dot = app.add_subcommand("dot", "Graphviz rendering of a completion");
  scenario_arg(dot);
  dot->add_option("--ulf", o.ulf, "Underspecified form")->required();
  dot->add_option("--completion", o.completion, "Coherent completion index")
      ->check(CLI::NonNegativeNumber);

  auto* exp = app.add_subcommand("export", "Print the canonical scenario document");
  scenario_arg(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPositive : kInputError;
  }
  return dispatch(app.get_subcommands().front()->get_name(), o);
}
