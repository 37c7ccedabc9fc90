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

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "megame/discourse.hpp"
#include "megame/rational.hpp"

namespace megame::game {

enum class AttackKind {
  kNone,
  kEvidence,
  kConsistency,
  kCoherence,
  kAdHominem,
  kGeneralSkeptical,
};

std::string_view attack_kind_name(AttackKind kind);
std::optional<AttackKind> parse_attack_kind(std::string_view text);

struct Move {
  std::string id;       // optional label, used by attack_target/answered_by
  std::string payload;  // unit id or attack descriptor
  PlayerId player = 0;
  AttackKind attack_kind = AttackKind::kNone;
  std::optional<std::string> attack_target;
  std::optional<std::string> answered_by;

  bool operator==(const Move&) const = default;
};

struct Turn {
  PlayerId player = 0;
  std::vector<Move> moves;

  bool operator==(const Turn&) const = default;
};

// Alternating sequence of turns. The length of a play is its move count.
class Play {
 public:
  Play() = default;

  // Groups consecutive moves by the same player into turns.
  static Play from_moves(const std::vector<Move>& moves);

  const std::vector<Turn>& turns() const { return turns_; }
  std::vector<Move> moves() const;
  std::size_t length() const;
  bool empty() const { return turns_.empty(); }
  std::optional<PlayerId> last_speaker() const;

  // Textual form "payload@player payload@player ...".
  std::string str() const;

  bool operator==(const Play&) const = default;

 private:
  friend Play extend(const Play& p, const Turn& t);
  std::vector<Turn> turns_;
};

// Appends a turn. Throws Error(kScript) with "wrong player" or "empty turn".
Play extend(const Play& p, const Turn& t);

// Flips every player label; payloads and turn boundaries are kept.
Play dual(const Play& p);

// The first n moves of p, as a play.
Play prefix(const Play& p, std::size_t n);

// Finite predicates over plays, stored as data so scenarios can carry them.
struct Predicate {
  enum class Op { kConst, kLastSpeaker, kSays, kCountAtLeast, kNot, kAnd, kOr };

  Op op = Op::kConst;
  bool value = false;      // kConst
  PlayerId player = 0;     // kLastSpeaker, kSays, kCountAtLeast
  std::string payload;     // kSays, kCountAtLeast (empty matches any move)
  std::size_t count = 0;   // kCountAtLeast
  std::vector<Predicate> args;  // kNot (one), kAnd, kOr

  static Predicate constant(bool v);
  static Predicate last_speaker(PlayerId i);
  static Predicate says(PlayerId i, std::string payload);
  static Predicate count_at_least(PlayerId i, std::string payload, std::size_t n);
  static Predicate negation(Predicate p);
  static Predicate all_of(std::vector<Predicate> ps);
  static Predicate any_of(std::vector<Predicate> ps);

  bool operator==(const Predicate&) const = default;
};

bool holds(const Predicate& pred, const Play& p);

enum class Tri { kFalse, kTrue, kUnknown };

// E's goal that the share of good unanswered attacks by the attacker tends
// to zero, judged at a finite horizon.
struct LimitRatioSpec {
  PlayerId attacker = 1;
  std::size_t window = 1;
  Rational epsilon = 0;
  std::size_t horizon = 1;
  bool disinterested = false;

  bool operator==(const LimitRatioSpec&) const = default;
};

// Wins when the discounted score reaches the threshold. Decided early once
// the remaining tail cannot change the comparison.
struct DiscountedSpec {
  Rational gamma = 0;
  Rational threshold = 0;
  std::map<std::string, Rational> scores;  // by payload, default 0

  bool operator==(const DiscountedSpec&) const = default;
};

// Holds when a jury's posterior on one player type, given the play, is
// strictly above a threshold. Evaluated through a caller-supplied oracle.
struct PosteriorSpec {
  std::string jury_type;
  std::string player_type;
  Rational threshold = 0;

  bool operator==(const PosteriorSpec&) const = default;
};

struct WinCondition {
  enum class Kind { kPredicate, kLimitRatio, kDiscounted, kPosterior };

  Kind kind = Kind::kPredicate;
  Predicate predicate;
  LimitRatioSpec limit_ratio;
  DiscountedSpec discounted;
  PosteriorSpec posterior;

  bool operator==(const WinCondition&) const = default;
};

// Posterior probability of a player type, or nullopt when the play has
// probability zero for that jury type.
using PosteriorOracle = std::function<std::optional<Rational>(
    const Play&, const std::string& jury_type, const std::string& player_type)>;

Tri evaluate_condition(const WinCondition& c, const Play& p,
                       const PosteriorOracle& posterior = {});

// A jury fixes a winning condition for each player. When win_lose is set,
// win1 is the complement of win0 and the stored win1 is ignored.
struct Jury {
  WinCondition win0;
  WinCondition win1;
  bool win_lose = true;

  bool operator==(const Jury&) const = default;
};

enum class Verdict { kWin0, kWin1, kUndecided };

std::string_view verdict_name(Verdict v);

// win_i when exactly player i's condition holds; undecided otherwise.
Verdict evaluate_win(const Jury& j, const Play& p,
                     const PosteriorOracle& posterior = {});

// Drops ad hominem and general skeptical attacks when the jury is
// disinterested.
std::vector<Move> admissible_attacks(const std::vector<Move>& ms,
                                     bool disinterested);

// Good (admissible and unanswered within p) attacks by the attacker divided
// by all of the attacker's attacks; 0 when there are none. An attack counts
// as answered when its answered_by names a move present in p.
Rational attack_ratio(const Play& p, PlayerId attacker, bool disinterested);

enum class LimitVerdict { kWinE, kNotWinE, kUndecided };

std::string_view limit_verdict_name(LimitVerdict v);

// Finite-horizon reading of "the ratio tends to zero" over ratios[0..horizon).
LimitVerdict estimate_limit_win_ratios(const std::vector<Rational>& ratios,
                                       std::size_t window,
                                       const Rational& epsilon,
                                       std::size_t horizon);

// Same, over a chain of prefixes of one play.
LimitVerdict estimate_limit_win(const std::vector<Play>& prefixes,
                                PlayerId attacker, bool disinterested,
                                std::size_t window, const Rational& epsilon,
                                std::size_t horizon);

using MoveScorer = std::function<Rational(const Move&)>;

// Sum of gamma^n * scorer(move_n) over the moves of p. gamma in [0,1).
Rational discounted_score(const Play& p, const Rational& gamma,
                          const MoveScorer& scorer);

// |symmetric difference| / |union| of the relation sets; 0 when both empty.
Rational history_distance(const discourse::History& h1,
                          const discourse::History& h2);

// True iff the distance stays within margin over the last ceil(horizon/4)
// rounds up to the horizon.
bool external_truth_win(
    const std::vector<std::pair<discourse::History, discourse::History>>& chain,
    const Rational& margin, std::size_t horizon);

// Finite game tree with win/lose leaf labels. Node 0 is the root.
struct GameTree {
  struct Edge {
    std::string label;
    Turn turn;
    std::size_t child = 0;
  };
  struct Node {
    PlayerId mover = 0;         // who chooses at an internal node
    std::vector<Edge> children;
    Verdict leaf = Verdict::kUndecided;  // meaningful at leaves only
  };

  std::vector<Node> nodes;

  // Appends a node and returns its index.
  std::size_t add_node(PlayerId mover, Verdict leaf = Verdict::kUndecided);
  void add_edge(std::size_t parent, std::string label, Turn turn,
                std::size_t child);
};

// Checks finiteness (a tree reachable from the root, no sharing), the
// alternation of movers and that every turn is labeled with its mover.
void check_tree(const GameTree& t);

struct Solution {
  PlayerId winner = 0;
  // Winner's choice at every winner node reachable under the strategy, keyed
  // by the path of edge labels from the root ("" for the root, "/a/b" below).
  std::map<std::string, std::string> strategy;
};

// Backward induction. Throws Error(kInvalidArgument) on an undecided leaf.
Solution solve_finite(const GameTree& t);

// Plays the solution's strategy against every opponent choice and reports
// whether all resulting leaves are won by the claimed winner.
bool strategy_wins_all_playouts(const GameTree& t, const Solution& s);

}  // namespace megame::game
