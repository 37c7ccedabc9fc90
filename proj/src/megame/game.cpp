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

#include "megame/game.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "megame/error.hpp"

namespace megame::game {

namespace {

constexpr std::array<std::pair<AttackKind, std::string_view>, 6> kAttackNames{{
    {AttackKind::kNone, "none"},
    {AttackKind::kEvidence, "evidence"},
    {AttackKind::kConsistency, "consistency"},
    {AttackKind::kCoherence, "coherence"},
    {AttackKind::kAdHominem, "ad_hominem"},
    {AttackKind::kGeneralSkeptical, "general_skeptical"},
}};

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace

std::string_view attack_kind_name(AttackKind kind) {
  for (const auto& [k, name] : kAttackNames) {
    if (k == kind) return name;
  }
  return "none";
}

std::optional<AttackKind> parse_attack_kind(std::string_view text) {
  for (const auto& [k, name] : kAttackNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

Play Play::from_moves(const std::vector<Move>& moves) {
  Play p;
  for (const auto& m : moves) {
    if (p.turns_.empty() || p.turns_.back().player != m.player) {
      p.turns_.push_back(Turn{m.player, {}});
    }
    p.turns_.back().moves.push_back(m);
  }
  return p;
}

std::vector<Move> Play::moves() const {
  std::vector<Move> out;
  for (const auto& t : turns_) out.insert(out.end(), t.moves.begin(), t.moves.end());
  return out;
}

std::size_t Play::length() const {
  std::size_t n = 0;
  for (const auto& t : turns_) n += t.moves.size();
  return n;
}

std::optional<PlayerId> Play::last_speaker() const {
  if (turns_.empty()) return std::nullopt;
  return turns_.back().player;
}

std::string Play::str() const {
  std::string out;
  for (const auto& m : moves()) {
    if (!out.empty()) out += ' ';
    out += m.payload + "@" + std::to_string(m.player);
  }
  return out;
}

Play extend(const Play& p, const Turn& t) {
  if (t.moves.empty()) fail(ErrorKind::kScript, "empty turn");
  if (t.player != 0 && t.player != 1) {
    fail(ErrorKind::kScript, "wrong player: " + std::to_string(t.player));
  }
  if (!p.turns_.empty() && p.turns_.back().player == t.player) {
    fail(ErrorKind::kScript, "wrong player: " + std::to_string(t.player) +
                                 " cannot speak twice in a row");
  }
  for (const auto& m : t.moves) {
    if (m.player != t.player) {
      fail(ErrorKind::kScript, "wrong player: move " + m.payload +
                                   " is labeled " + std::to_string(m.player));
    }
    if (m.attack_kind != AttackKind::kNone && !m.attack_target) {
      fail(ErrorKind::kScript, "attack " + m.payload + " has no target");
    }
  }
  Play out = p;
  out.turns_.push_back(t);
  return out;
}

Play dual(const Play& p) {
  auto moves = p.moves();
  for (auto& m : moves) m.player = 1 - m.player;
  return Play::from_moves(moves);
}

Play prefix(const Play& p, std::size_t n) {
  auto moves = p.moves();
  moves.resize(std::min(n, moves.size()));
  return Play::from_moves(moves);
}

Predicate Predicate::constant(bool v) {
  Predicate p;
  p.op = Op::kConst;
  p.value = v;
  return p;
}

Predicate Predicate::last_speaker(PlayerId i) {
  Predicate p;
  p.op = Op::kLastSpeaker;
  p.player = i;
  return p;
}

Predicate Predicate::says(PlayerId i, std::string payload) {
  Predicate p;
  p.op = Op::kSays;
  p.player = i;
  p.payload = std::move(payload);
  return p;
}

Predicate Predicate::count_at_least(PlayerId i, std::string payload,
                                    std::size_t n) {
  Predicate p;
  p.op = Op::kCountAtLeast;
  p.player = i;
  p.payload = std::move(payload);
  p.count = n;
  return p;
}

Predicate Predicate::negation(Predicate inner) {
  Predicate p;
  p.op = Op::kNot;
  p.args.push_back(std::move(inner));
  return p;
}

Predicate Predicate::all_of(std::vector<Predicate> ps) {
  Predicate p;
  p.op = Op::kAnd;
  p.args = std::move(ps);
  return p;
}

Predicate Predicate::any_of(std::vector<Predicate> ps) {
  Predicate p;
  p.op = Op::kOr;
  p.args = std::move(ps);
  return p;
}

bool holds(const Predicate& pred, const Play& p) {
  using Op = Predicate::Op;
  switch (pred.op) {
    case Op::kConst:
      return pred.value;
    case Op::kLastSpeaker:
      return p.last_speaker() == pred.player;
    case Op::kSays:
    case Op::kCountAtLeast: {
      std::size_t n = 0;
      for (const auto& t : p.turns()) {
        if (t.player != pred.player) continue;
        for (const auto& m : t.moves) {
          if (pred.payload.empty() || m.payload == pred.payload) ++n;
        }
      }
      return pred.op == Op::kSays ? n > 0 : n >= pred.count;
    }
    case Op::kNot:
      if (pred.args.size() != 1) fail(ErrorKind::kInvalidArgument, "not takes one argument");
      return !holds(pred.args.front(), p);
    case Op::kAnd:
      return std::all_of(pred.args.begin(), pred.args.end(),
                         [&](const Predicate& a) { return holds(a, p); });
    case Op::kOr:
      return std::any_of(pred.args.begin(), pred.args.end(),
                         [&](const Predicate& a) { return holds(a, p); });
  }
  return false;
}

namespace {

void check_gamma(const Rational& gamma) {
  if (gamma < 0 || gamma >= 1) {
    fail(ErrorKind::kInvalidArgument,
         "gamma must lie in [0,1), got " + to_string(gamma));
  }
}

Tri discounted_verdict(const DiscountedSpec& spec, const Play& p) {
  check_gamma(spec.gamma);
  auto scorer = [&](const Move& m) {
    auto it = spec.scores.find(m.payload);
    return it == spec.scores.end() ? Rational(0) : it->second;
  };
  const Rational s = discounted_score(p, spec.gamma, scorer);
  Rational max_abs = 0;
  for (const auto& [_, v] : spec.scores) max_abs = std::max(max_abs, abs(v));
  const Rational tail =
      pow(spec.gamma, static_cast<unsigned>(p.length())) * max_abs / (1 - spec.gamma);
  if (s - tail >= spec.threshold) return Tri::kTrue;
  if (s + tail < spec.threshold) return Tri::kFalse;
  return Tri::kUnknown;
}

Tri limit_ratio_verdict(const LimitRatioSpec& spec, const Play& p) {
  if (p.length() < spec.horizon) return Tri::kUnknown;
  std::vector<Rational> ratios;
  for (std::size_t n = 1; n <= spec.horizon; ++n) {
    ratios.push_back(attack_ratio(prefix(p, n), spec.attacker, spec.disinterested));
  }
  switch (estimate_limit_win_ratios(ratios, spec.window, spec.epsilon, spec.horizon)) {
    case LimitVerdict::kWinE: return Tri::kTrue;
    case LimitVerdict::kNotWinE: return Tri::kFalse;
    case LimitVerdict::kUndecided: return Tri::kUnknown;
  }
  return Tri::kUnknown;
}

}  // namespace

Tri evaluate_condition(const WinCondition& c, const Play& p,
                       const PosteriorOracle& posterior) {
  switch (c.kind) {
    case WinCondition::Kind::kPredicate:
      return holds(c.predicate, p) ? Tri::kTrue : Tri::kFalse;
    case WinCondition::Kind::kLimitRatio:
      return limit_ratio_verdict(c.limit_ratio, p);
    case WinCondition::Kind::kDiscounted:
      return discounted_verdict(c.discounted, p);
    case WinCondition::Kind::kPosterior: {
      if (!posterior) {
        fail(ErrorKind::kInvalidArgument,
             "posterior condition evaluated without a type space");
      }
      const auto q = posterior(p, c.posterior.jury_type, c.posterior.player_type);
      if (!q) return Tri::kUnknown;
      return *q > c.posterior.threshold ? Tri::kTrue : Tri::kFalse;
    }
  }
  return Tri::kUnknown;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kWin0: return "win_0";
    case Verdict::kWin1: return "win_1";
    case Verdict::kUndecided: return "undecided";
  }
  return "undecided";
}

Verdict evaluate_win(const Jury& j, const Play& p, const PosteriorOracle& posterior) {
  const Tri w0 = evaluate_condition(j.win0, p, posterior);
  if (j.win_lose) {
    if (w0 == Tri::kTrue) return Verdict::kWin0;
    if (w0 == Tri::kFalse) return Verdict::kWin1;
    return Verdict::kUndecided;
  }
  const Tri w1 = evaluate_condition(j.win1, p, posterior);
  if (w0 == Tri::kTrue && w1 != Tri::kTrue) return Verdict::kWin0;
  if (w1 == Tri::kTrue && w0 != Tri::kTrue) return Verdict::kWin1;
  return Verdict::kUndecided;
}

std::vector<Move> admissible_attacks(const std::vector<Move>& ms,
                                     bool disinterested) {
  if (!disinterested) return ms;
  std::vector<Move> out;
  for (const auto& m : ms) {
    if (m.attack_kind == AttackKind::kAdHominem ||
        m.attack_kind == AttackKind::kGeneralSkeptical) {
      continue;
    }
    out.push_back(m);
  }
  return out;
}

Rational attack_ratio(const Play& p, PlayerId attacker, bool disinterested) {
  const auto moves = p.moves();
  std::set<std::string> present;
  for (const auto& m : moves) {
    if (!m.id.empty()) present.insert(m.id);
  }
  std::vector<Move> attacks;
  for (const auto& m : moves) {
    if (m.player == attacker && m.attack_kind != AttackKind::kNone) {
      attacks.push_back(m);
    }
  }
  if (attacks.empty()) return 0;
  std::size_t good = 0;
  for (const auto& m : admissible_attacks(attacks, disinterested)) {
    if (!m.answered_by || !present.count(*m.answered_by)) ++good;
  }
  return Rational(BigInt(good), BigInt(attacks.size()));
}

std::string_view limit_verdict_name(LimitVerdict v) {
  switch (v) {
    case LimitVerdict::kWinE: return "win_E";
    case LimitVerdict::kNotWinE: return "not_win_E";
    case LimitVerdict::kUndecided: return "undecided";
  }
  return "undecided";
}

LimitVerdict estimate_limit_win_ratios(const std::vector<Rational>& ratios,
                                       std::size_t window,
                                       const Rational& epsilon,
                                       std::size_t horizon) {
  if (horizon == 0 || window == 0) {
    fail(ErrorKind::kInvalidArgument, "horizon and window must be positive");
  }
  if (horizon > ratios.size()) {
    fail(ErrorKind::kInvalidArgument,
         "horizon " + std::to_string(horizon) + " exceeds the " +
             std::to_string(ratios.size()) + " available prefixes");
  }
  if (window > horizon) {
    fail(ErrorKind::kInvalidArgument, "window exceeds horizon");
  }
  const auto first = ratios.begin() + static_cast<std::ptrdiff_t>(horizon - window);
  const auto last = ratios.begin() + static_cast<std::ptrdiff_t>(horizon);
  bool nonincreasing = true, nondecreasing = true;
  for (auto it = first; it + 1 != last; ++it) {
    if (*(it + 1) > *it) nonincreasing = false;
    if (*(it + 1) < *it) nondecreasing = false;
  }
  if (nonincreasing && *(last - 1) < epsilon) return LimitVerdict::kWinE;
  if (nondecreasing && *std::min_element(first, last) >= epsilon) {
    return LimitVerdict::kNotWinE;
  }
  return LimitVerdict::kUndecided;
}

LimitVerdict estimate_limit_win(const std::vector<Play>& prefixes,
                                PlayerId attacker, bool disinterested,
                                std::size_t window, const Rational& epsilon,
                                std::size_t horizon) {
  if (horizon > prefixes.size()) {
    fail(ErrorKind::kInvalidArgument,
         "horizon " + std::to_string(horizon) + " exceeds the " +
             std::to_string(prefixes.size()) + " available prefixes");
  }
  std::vector<Rational> ratios;
  for (std::size_t i = 0; i < horizon; ++i) {
    ratios.push_back(attack_ratio(prefixes[i], attacker, disinterested));
  }
  return estimate_limit_win_ratios(ratios, window, epsilon, horizon);
}

Rational discounted_score(const Play& p, const Rational& gamma,
                          const MoveScorer& scorer) {
  check_gamma(gamma);
  Rational total = 0, weight = 1;
  for (const auto& m : p.moves()) {
    total += weight * scorer(m);
    weight *= gamma;
  }
  return total;
}

Rational history_distance(const discourse::History& h1,
                          const discourse::History& h2) {
  for (const auto* h : {&h1, &h2}) {
    const auto report = discourse::validate_history(*h);
    if (!report.empty()) {
      fail(ErrorKind::kIncoherent,
           "incoherent input: " +
               std::string(discourse::violation_name(report.front().kind)));
    }
  }
  std::size_t shared = 0;
  for (const auto& r : h1.relations) shared += h2.relations.count(r);
  const std::size_t uni = h1.relations.size() + h2.relations.size() - shared;
  if (uni == 0) return 0;
  return Rational(BigInt(uni - shared), BigInt(uni));
}

bool external_truth_win(
    const std::vector<std::pair<discourse::History, discourse::History>>& chain,
    const Rational& margin, std::size_t horizon) {
  if (horizon == 0) fail(ErrorKind::kInvalidArgument, "horizon must be positive");
  if (horizon > chain.size()) {
    fail(ErrorKind::kInvalidArgument,
         "horizon " + std::to_string(horizon) + " exceeds the " +
             std::to_string(chain.size()) + " available rounds");
  }
  const std::size_t window = (horizon + 3) / 4;
  for (std::size_t i = horizon - window; i < horizon; ++i) {
    if (history_distance(chain[i].first, chain[i].second) > margin) return false;
  }
  return true;
}

std::size_t GameTree::add_node(PlayerId mover, Verdict leaf) {
  nodes.push_back(Node{mover, {}, leaf});
  return nodes.size() - 1;
}

void GameTree::add_edge(std::size_t parent, std::string label, Turn turn,
                        std::size_t child) {
  nodes.at(parent).children.push_back(Edge{std::move(label), std::move(turn), child});
}

void check_tree(const GameTree& t) {
  if (t.nodes.empty()) fail(ErrorKind::kInvalidArgument, "empty game tree");
  std::vector<int> seen(t.nodes.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const std::size_t n = stack.back();
    stack.pop_back();
    const auto& node = t.nodes[n];
    std::set<std::string> labels;
    for (const auto& e : node.children) {
      if (e.child >= t.nodes.size()) {
        fail(ErrorKind::kInvalidArgument, "edge to missing node");
      }
      if (seen[e.child]++) {
        fail(ErrorKind::kInvalidArgument, "game tree shares or revisits a node");
      }
      if (!labels.insert(e.label).second) {
        fail(ErrorKind::kInvalidArgument, "duplicate edge label " + e.label);
      }
      if (e.turn.player != node.mover) {
        fail(ErrorKind::kInvalidArgument, "turn " + e.label + " not played by the mover");
      }
      const auto& child = t.nodes[e.child];
      if (!child.children.empty() && child.mover == node.mover) {
        fail(ErrorKind::kInvalidArgument, "movers do not alternate below " + e.label);
      }
      stack.push_back(e.child);
    }
  }
}

namespace {

Verdict win_of(PlayerId i) { return i == 0 ? Verdict::kWin0 : Verdict::kWin1; }

// Value of each node under optimal play (kWin0 or kWin1).
std::vector<Verdict> node_values(const GameTree& t) {
  std::vector<Verdict> value(t.nodes.size(), Verdict::kUndecided);
  // Post-order over the tree.
  std::vector<std::pair<std::size_t, bool>> stack{{0, false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    const auto& node = t.nodes[n];
    if (node.children.empty()) {
      if (node.leaf == Verdict::kUndecided) {
        fail(ErrorKind::kInvalidArgument,
             "leaf classification is not win-lose (undecided leaf)");
      }
      value[n] = node.leaf;
      continue;
    }
    if (!expanded) {
      stack.push_back({n, true});
      for (const auto& e : node.children) stack.push_back({e.child, false});
      continue;
    }
    const Verdict mine = win_of(node.mover);
    value[n] = win_of(1 - node.mover);
    for (const auto& e : node.children) {
      if (value[e.child] == mine) {
        value[n] = mine;
        break;
      }
    }
  }
  return value;
}

}  // namespace

Solution solve_finite(const GameTree& t) {
  check_tree(t);
  const auto value = node_values(t);
  Solution s;
  s.winner = value[0] == Verdict::kWin0 ? 0 : 1;
  const Verdict target = value[0];
  std::vector<std::pair<std::size_t, std::string>> stack{{0, ""}};
  while (!stack.empty()) {
    auto [n, path] = stack.back();
    stack.pop_back();
    const auto& node = t.nodes[n];
    if (node.children.empty()) continue;
    if (node.mover == s.winner) {
      for (const auto& e : node.children) {
        if (value[e.child] == target) {
          s.strategy[path] = e.label;
          stack.push_back({e.child, path + "/" + e.label});
          break;
        }
      }
    } else {
      for (const auto& e : node.children) stack.push_back({e.child, path + "/" + e.label});
    }
  }
  return s;
}

bool strategy_wins_all_playouts(const GameTree& t, const Solution& s) {
  const Verdict target = win_of(s.winner);
  std::vector<std::pair<std::size_t, std::string>> stack{{0, ""}};
  while (!stack.empty()) {
    auto [n, path] = stack.back();
    stack.pop_back();
    const auto& node = t.nodes[n];
    if (node.children.empty()) {
      if (node.leaf != target) return false;
      continue;
    }
    if (node.mover == s.winner) {
      auto it = s.strategy.find(path);
      if (it == s.strategy.end()) return false;
      bool found = false;
      for (const auto& e : node.children) {
        if (e.label == it->second) {
          stack.push_back({e.child, path + "/" + e.label});
          found = true;
          break;
        }
      }
      if (!found) return false;
    } else {
      for (const auto& e : node.children) stack.push_back({e.child, path + "/" + e.label});
    }
  }
  return true;
}

}  // namespace megame::game
