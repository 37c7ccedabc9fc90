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

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "megame/discourse.hpp"
#include "megame/epistemic.hpp"
#include "megame/game.hpp"
#include "megame/rational.hpp"

namespace megame {

struct Script {
  std::vector<game::Turn> prefix;
  std::vector<std::vector<game::Turn>> rounds;

  bool operator==(const Script&) const = default;
};

struct ScoreKey {
  std::string jury_type;
  std::string ulf;
  std::size_t completion = 0;

  auto operator<=>(const ScoreKey&) const = default;
};

// Attacks on each side's history and the rebuttals the jury accepts, keyed
// by attack id.
struct TruthGameSpec {
  std::string ulf_e;
  std::string ulf_a;
  std::vector<game::Move> attacks_on_e;
  std::vector<game::Move> attacks_on_a;
  std::map<std::string, game::Move> rebuttals_e;
  std::map<std::string, game::Move> rebuttals_a;
  bool disinterested = false;

  bool operator==(const TruthGameSpec&) const = default;
};

enum class Ground { kSound, kWeak };

struct AgreementSpec {
  std::vector<std::string> facts;
  std::array<std::vector<Ground>, 2> grounds;
  std::array<bool, 2> truth_interested{true, true};

  bool operator==(const AgreementSpec&) const = default;
};

struct GameSpec {
  std::string name;
  discourse::UnitTable units;
  std::map<std::string, discourse::UnderspecifiedForm> ulfs;
  std::map<std::string, std::size_t> grammar;  // ULF id -> completion index
  std::vector<std::string> vocabulary;
  epistemic::TypeSpace type_space;
  Script script;
  std::map<std::string, game::Jury> juries;  // by jury type
  std::map<ScoreKey, Rational> scores;
  std::map<std::string, std::string> bijection;
  PlayerId designated_player = 1;
  std::optional<TruthGameSpec> truth_game;
  std::optional<AgreementSpec> agreement;

  const discourse::UnderspecifiedForm& ulf(const std::string& id) const;
  discourse::Completions completions(const std::string& ulf_id) const;
  // The single coherent completion of a ULF.
  discourse::History history(const std::string& ulf_id) const;
  const game::Jury& jury(const std::string& jury_type) const;
  game::Play prefix_play() const;
  // Prefix followed by the first n scripted rounds.
  game::Play scripted_play(std::size_t n) const;

  bool operator==(const GameSpec&) const = default;
};

// Parses and fully validates a scenario document. Throws Error with kParse
// (with line and column), kReference, kScript, kNotNormalized or
// kInvalidArgument.
GameSpec load_scenario(const std::string& json_text);
GameSpec load_scenario_file(const std::string& path);

// Canonical JSON rendering; load_scenario(serialize(s)) == s.
std::string serialize(const GameSpec& spec);

const std::vector<std::string>& builtin_names();
// Throws Error(kUnknownName) listing the valid names.
GameSpec builtin(const std::string& name);
const std::string& builtin_source(const std::string& name);

// A path that exists is loaded as a file; anything else is a builtin name.
GameSpec resolve_scenario(const std::string& path_or_name);

}  // namespace megame
