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

#pragma once

#include "megame/scenario.hpp"

#include <optional>
#include <string>

// Machine-readable reports for the command-line front end. Every report is
// a single JSON document (or CSV / JSON-lines for trajectories) built from
// library calls only; identical inputs give byte-identical text.
namespace megame::report {

// A report plus whether the checked property's positive branch holds.
struct Outcome {
  std::string text;
  bool positive = true;
};

enum class TrajectoryFormat { kCsv, kJsonl };

// Trajectories for one jury type or, when absent, every jury type. Rounds
// default to the full script.
std::string run(const GameSpec& spec, const std::optional<std::string>& jury_type,
                std::optional<std::size_t> rounds, TrajectoryFormat format);

// Positive when every selected jury type meets the necessary conditions.
// Without a jury type every jury type with winning conditions is checked.
Outcome check_disinterested(const GameSpec& spec,
                            const std::optional<std::string>& jury_type,
                            std::size_t max_length);

// Positive when some (jury type, ULF) pair yields a witness. The grammar
// completion defaults to the ULF's declared one; ULFs without one are
// skipped unless a grammar index is given.
Outcome check_dogwhistle(const GameSpec& spec, const std::optional<std::string>& jury_type,
                         const std::optional<std::string>& ulf,
                         std::optional<std::size_t> grammar);

// Positive when some selected (jury type, ULF) pair is ambiguous.
Outcome check_ambiguity(const GameSpec& spec, const std::optional<std::string>& jury_type,
                        const std::optional<std::string>& ulf);

// Positive when every selected ULF admits a coherent completion. Violations
// of every incoherent slot combination are listed.
Outcome check_coherence(const GameSpec& spec, const std::optional<std::string>& ulf);

// One JSON object per line and per slot combination.
std::string enumerate(const GameSpec& spec, const std::string& ulf);

// Agreement sweep over the scenario's agreement section. The optional
// player is treated as not truth-interested. Positive iff every instance
// agreed.
Outcome agree(const GameSpec& spec, const Rational& step, std::size_t max_rounds,
              std::optional<PlayerId> not_truth_interested);

// Backward induction on the tree of the first depth scripted rounds. The
// jury type defaults to the first one with winning conditions.
std::string solve(const GameSpec& spec, const std::optional<std::string>& jury_type,
                  std::size_t depth);

// Pairwise distances between histories named "ulf" or "ulf#k". With no
// names, every single-completion ULF is compared with every other.
std::string distance(const GameSpec& spec, const std::vector<std::string>& refs);

// Graphviz rendering of one completion.
std::string dot(const GameSpec& spec, const std::string& ulf, std::size_t completion);

}  // namespace megame::report
