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

#include "megame/discourse.hpp"
#include "megame/game.hpp"
#include "megame/rational.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace megame::testing {

inline Rational q(long long num, long long den = 1) { return make_rational(num, den); }

inline discourse::Edu edu(const std::string& id, std::initializer_list<const char*> atoms,
                          PlayerId speaker = 0) {
  discourse::Edu e;
  e.id = id;
  e.speaker = speaker;
  for (const char* a : atoms) e.commitments.insert(discourse::Literal::parse(a));
  return e;
}

inline discourse::RelationInstance rel(discourse::RelationName name, const std::string& s,
                                       const std::string& t) {
  return {name, s, t};
}

inline discourse::History history(std::vector<discourse::Edu> edus,
                                  std::vector<discourse::RelationInstance> rels = {},
                                  std::vector<discourse::Cdu> cdus = {}) {
  discourse::History h;
  h.edus = std::move(edus);
  h.cdus = std::move(cdus);
  h.relations.insert(rels.begin(), rels.end());
  return h;
}

inline game::Move move(const std::string& payload, PlayerId player) {
  game::Move m;
  m.payload = payload;
  m.player = player;
  return m;
}

inline game::Move attack(const std::string& id, PlayerId player, game::AttackKind kind,
                         const std::string& target) {
  game::Move m = move(id, player);
  m.id = id;
  m.attack_kind = kind;
  m.attack_target = target;
  return m;
}

inline game::Turn turn(PlayerId player, std::initializer_list<const char*> payloads) {
  game::Turn t;
  t.player = player;
  for (const char* p : payloads) t.moves.push_back(move(p, player));
  return t;
}

// Play with one move per entry, speakers as given.
inline game::Play play(const std::vector<std::pair<std::string, PlayerId>>& moves) {
  std::vector<game::Move> ms;
  for (const auto& [p, i] : moves) ms.push_back(move(p, i));
  return game::Play::from_moves(ms);
}

}  // namespace megame::testing
