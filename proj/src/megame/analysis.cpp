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

#include "megame/analysis.hpp"

#include <algorithm>
#include <tuple>

#include "megame/epistemic.hpp"
#include "megame/error.hpp"

namespace megame::analysis {

using discourse::History;

std::set<std::size_t> live_completions(const GameSpec& spec,
                                       const std::string& jury_type,
                                       const std::string& ulf) {
  spec.ulf(ulf);
  const auto& ts = spec.type_space;
  std::set<std::size_t> live;
  for (const auto& types : epistemic::type_marginal(ts.prior(jury_type)).support()) {
    for (const auto& h : epistemic::interpret(ts, jury_type, types, ulf).support()) {
      live.insert(h);
    }
  }
  return live;
}

AmbiguityReport ambiguity(const GameSpec& spec, const std::string& jury_type,
                          const std::string& ulf) {
  AmbiguityReport report;
  report.live = live_completions(spec, jury_type, ulf);
  if (report.live.size() < 2) return report;
  const auto histories = spec.completions(ulf).histories;
  for (auto i = report.live.begin(); i != report.live.end(); ++i) {
    for (auto j = std::next(i); j != report.live.end(); ++j) {
      if (discourse::semantically_distinct(histories.at(*i), histories.at(*j))) {
        report.ambiguous = true;
        report.distinct_pair = std::make_pair(*i, *j);
        return report;
      }
    }
  }
  return report;
}

bool is_ambiguous(const GameSpec& spec, const std::string& jury_type,
                  const std::string& ulf) {
  return ambiguity(spec, jury_type, ulf).ambiguous;
}

namespace {

const Rational& score_of(const GameSpec& spec, const std::string& jury,
                         const std::string& ulf, std::size_t h) {
  auto it = spec.scores.find(ScoreKey{jury, ulf, h});
  if (it == spec.scores.end()) {
    fail(ErrorKind::kReference, "jury " + jury + " has no score for completion " +
                                    std::to_string(h) + " of " + ulf);
  }
  return it->second;
}

}  // namespace

std::optional<DogWhistleWitness> is_dog_whistle(
    const GameSpec& spec, const std::string& jury_type, const std::string& ulf,
    std::size_t grammar_h, const std::vector<std::string>& jury_pool) {
  const auto histories = spec.completions(ulf).histories;
  if (grammar_h >= histories.size()) {
    fail(ErrorKind::kInvalidArgument,
         "grammar history " + std::to_string(grammar_h) + " is not a completion of " +
             ulf + " (" + std::to_string(histories.size()) + " completions)");
  }
  std::vector<std::string> pool = jury_pool;
  if (pool.empty()) {
    std::set<std::string> scored;
    for (const auto& [key, _] : spec.scores) {
      if (key.ulf == ulf) scored.insert(key.jury_type);
    }
    pool.assign(scored.begin(), scored.end());
  }
  const auto live = live_completions(spec, jury_type, ulf);
  if (live.size() < 2 || !live.count(grammar_h)) return std::nullopt;
  const History& grammar = histories[grammar_h];
  for (const std::size_t h : live) {
    if (h == grammar_h || histories[h] == grammar) continue;
    if (!discourse::entails(histories[h], grammar)) continue;
    for (const auto& jury : pool) {
      const Rational& loaded = score_of(spec, jury, ulf, h);
      const Rational& plain = score_of(spec, jury, ulf, grammar_h);
      if (loaded > plain) return DogWhistleWitness{h, grammar_h, jury, true, loaded, plain};
    }
  }
  return std::nullopt;
}

std::optional<game::Play> indifference_counterexample(
    const game::Jury& jury, const std::vector<std::string>& vocabulary,
    std::size_t maxlen, const game::PosteriorOracle& oracle) {
  using game::Verdict;
  const std::size_t alphabet = 2 * vocabulary.size();
  if (alphabet == 0) return std::nullopt;
  for (std::size_t len = 1; len <= maxlen; ++len) {
    std::vector<std::size_t> digits(len, 0);
    while (true) {
      std::vector<game::Move> moves;
      for (const auto d : digits) {
        game::Move m;
        m.payload = vocabulary[d / 2];
        m.player = static_cast<PlayerId>(d % 2);
        moves.push_back(std::move(m));
      }
      const game::Play p = game::Play::from_moves(moves);
      const Verdict v = game::evaluate_win(jury, p, oracle);
      const Verdict vd = game::evaluate_win(jury, game::dual(p), oracle);
      const bool ok = (v == Verdict::kWin0) == (vd == Verdict::kWin1) &&
                      (v == Verdict::kWin1) == (vd == Verdict::kWin0);
      if (!ok) return p;
      std::size_t i = len;
      while (i > 0 && ++digits[i - 1] == alphabet) digits[--i] = 0;
      if (i == 0) break;
    }
  }
  return std::nullopt;
}

std::string_view symmetry_name(Symmetry s) {
  switch (s) {
    case Symmetry::kPass: return "pass";
    case Symmetry::kFail: return "fail";
    case Symmetry::kIncomparable: return "incomparable";
  }
  return "fail";
}

DisinterestReport is_disinterested(const GameSpec& spec,
                                   const std::string& jury_type,
                                   std::size_t maxlen) {
  DisinterestReport report;
  report.counterexample = indifference_counterexample(
      spec.jury(jury_type), spec.vocabulary, maxlen,
      epistemic::make_posterior_oracle(spec));
  try {
    std::optional<std::map<std::string, std::string>> bijection;
    if (!spec.bijection.empty()) bijection = spec.bijection;
    report.symmetry =
        epistemic::check_prior_symmetry(spec.type_space, jury_type, bijection)
            ? Symmetry::kPass
            : Symmetry::kFail;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kInvalidArgument) throw;
    report.symmetry = Symmetry::kIncomparable;
  }
  report.necessary_conditions_met =
      !report.counterexample && report.symmetry == Symmetry::kPass;
  return report;
}

Rational truth_interested_update(const Rational& p, const EvidenceOutcome& o,
                                 const std::optional<Likelihoods>& likelihoods) {
  if (p < 0 || p > 1) {
    fail(ErrorKind::kInvalidArgument, "probability out of range: " + to_string(p));
  }
  switch (o.tag) {
    case EvidenceTag::kNoSurvivingConfirmation:
      return std::min(p, make_rational(1, 2));
    case EvidenceTag::kUnrebuttedRefutation:
      return 0;
    case EvidenceTag::kConfirmationSurvives: {
      if (!likelihoods) {
        fail(ErrorKind::kInvalidArgument,
             "missing likelihoods for a surviving confirmation");
      }
      const auto& [given_a, given_not_a] = *likelihoods;
      if (given_a < 0 || given_a > 1 || given_not_a < 0 || given_not_a > 1) {
        fail(ErrorKind::kInvalidArgument, "likelihoods must lie in [0,1]");
      }
      const Rational evidence = p * given_a + (1 - p) * given_not_a;
      if (evidence == 0) fail(ErrorKind::kNullEvent, "conditioning on null event");
      return p * given_a / evidence;
    }
  }
  return p;
}

std::vector<Rational> update_chain(const Rational& p,
                                   const std::vector<EvidenceStep>& steps) {
  std::vector<Rational> chain;
  Rational current = p;
  for (const auto& s : steps) {
    current = truth_interested_update(current, s.outcome, s.likelihoods);
    chain.push_back(current);
  }
  return chain;
}

Rational liminf_update(const Rational& p, const std::vector<EvidenceStep>& steps,
                       std::size_t horizon) {
  if (horizon == 0) fail(ErrorKind::kInvalidArgument, "horizon must be positive");
  if (steps.size() < horizon) {
    fail(ErrorKind::kInvalidArgument,
         "horizon " + std::to_string(horizon) + " exceeds the " +
             std::to_string(steps.size()) + " available outcomes");
  }
  const auto chain = update_chain(p, std::vector<EvidenceStep>(
                                         steps.begin(),
                                         steps.begin() + static_cast<std::ptrdiff_t>(horizon)));
  const std::size_t window = (horizon + 3) / 4;
  return *std::min_element(chain.end() - static_cast<std::ptrdiff_t>(window), chain.end());
}

Stance stance(const Rational& p) {
  const Rational half = make_rational(1, 2);
  if (p > half) return Stance::kPositive;
  if (p < half) return Stance::kNegative;
  return Stance::kOpen;
}

std::size_t history_index(const std::vector<Rational>& beliefs) {
  std::size_t index = 0;
  for (const auto& p : beliefs) index = index * 3 + static_cast<std::size_t>(stance(p));
  return index;
}

AgreementOutcome simulate_agreement(const AgreementInput& in) {
  if (in.max_rounds == 0) fail(ErrorKind::kInvalidArgument, "max_rounds must be positive");
  const std::size_t k = in.beliefs[0].size();
  for (std::size_t i : {0, 1}) {
    if (in.beliefs[i].size() != k || in.grounds[i].size() != k) {
      fail(ErrorKind::kInvalidArgument,
           "beliefs and grounds must cover the same facts for both players");
    }
    for (const auto& p : in.beliefs[i]) {
      if (p < 0 || p > 1) {
        fail(ErrorKind::kInvalidArgument, "probability out of range: " + to_string(p));
      }
    }
  }

  AgreementOutcome out;
  out.final_beliefs = in.beliefs;
  auto& b = out.final_beliefs;
  std::size_t cursor = 0;
  while (true) {
    std::vector<std::size_t> conflicts;
    for (std::size_t f = 0; f < k; ++f) {
      if (stance(b[0][f]) != stance(b[1][f])) conflicts.push_back(f);
    }
    if (conflicts.empty()) {
      out.agreed = true;
      break;
    }
    if (out.rounds_used == in.max_rounds) break;
    auto next = std::lower_bound(conflicts.begin(), conflicts.end(), cursor);
    const std::size_t f = next == conflicts.end() ? conflicts.front() : *next;
    cursor = f + 1;

    std::array<Ground, 2> g;
    for (std::size_t i : {0, 1}) {
      g[i] = stance(b[i][f]) == Stance::kOpen ? Ground::kWeak : in.grounds[i][f];
    }
    if (g[0] == Ground::kSound && g[1] == Ground::kSound) {
      fail(ErrorKind::kInvalidArgument,
           "both players hold sound grounds on contested fact " + std::to_string(f));
    }
    if (g[0] != g[1]) {
      // One player's grounds fall to the other's attack.
      const std::size_t weak = g[0] == Ground::kWeak ? 0 : 1;
      if (in.truth_interested[weak]) b[weak][f] = b[1 - weak][f];
    } else {
      for (std::size_t i : {0, 1}) {
        if (in.truth_interested[i]) b[i][f] = make_rational(1, 2);
      }
    }
    ++out.rounds_used;
  }
  out.final_histories = {history_index(b[0]), history_index(b[1])};
  return out;
}

std::vector<Rational> prior_grid(const Rational& step) {
  if (step <= 0 || step > 1) {
    fail(ErrorKind::kInvalidArgument, "grid step must lie in (0,1], got " + to_string(step));
  }
  std::vector<Rational> grid;
  for (Rational p = 0; p <= 1; p += step) grid.push_back(p);
  return grid;
}

SweepReport agreement_sweep(const AgreementSpec& spec, const Rational& step,
                            std::size_t max_rounds) {
  if (max_rounds == 0) fail(ErrorKind::kInvalidArgument, "max_rounds must be positive");
  const auto grid = prior_grid(step);
  const std::size_t n = grid.size();
  const std::size_t k = spec.facts.size();
  SweepReport report;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      AgreementInput in;
      in.truth_interested = spec.truth_interested;
      in.grounds = spec.grounds;
      in.max_rounds = max_rounds;
      for (std::size_t j = 0; j < k; ++j) {
        in.beliefs[0].push_back(grid[(a + j) % n]);
        in.beliefs[1].push_back(grid[(b + 2 * j) % n]);
      }
      const auto out = simulate_agreement(in);
      ++report.instances;
      if (out.agreed) {
        ++report.agreed;
        report.max_rounds_used = std::max(report.max_rounds_used, out.rounds_used);
      } else if (!report.first_disagreement) {
        report.first_disagreement = in;
      }
    }
  }
  return report;
}

namespace {

std::string attack_key(const game::Move& m) { return m.id.empty() ? m.payload : m.id; }

}  // namespace

bool e_defensible(const History& h, const std::vector<game::Move>& attacks,
                  const std::map<std::string, game::Move>& rebuttals,
                  bool disinterested) {
  if (!discourse::is_coherent(h)) return false;
  for (const auto& m : game::admissible_attacks(attacks, disinterested)) {
    if (m.attack_kind == game::AttackKind::kNone) continue;
    if (!rebuttals.count(attack_key(m))) return false;
  }
  return true;
}

bool is_predictive(const History& h, const std::vector<discourse::Edu>& new_facts,
                   const std::vector<ExtenderRule>& extender,
                   const DefensibilityContext& context) {
  if (!discourse::is_coherent(h)) return false;
  History extended = h;
  for (const auto& fact : new_facts) {
    bool attached = false;
    for (const auto& rule : extender) {
      if (rule.fact != fact.id) continue;
      extended.relations.insert(rule.relation);
      attached = true;
    }
    if (!attached) return false;
    extended.edus.push_back(fact);
  }
  extended.provenance.reset();
  if (!discourse::is_coherent(extended)) return false;
  return e_defensible(extended, context.attacks, context.rebuttals,
                      context.disinterested);
}

std::string_view truth_verdict_name(TruthVerdict v) {
  switch (v) {
    case TruthVerdict::kEWins: return "E_wins";
    case TruthVerdict::kAWins: return "A_wins";
    case TruthVerdict::kBothLose: return "both_lose";
  }
  return "both_lose";
}

TruthOutcome two_history_outcome(const History& h_e, const History& h_a,
                                 const TruthGameSpec& script) {
  TruthOutcome out;
  discourse::CommitmentSet joint = discourse::commitments(h_e);
  const auto other = discourse::commitments(h_a);
  joint.atoms.insert(other.atoms.begin(), other.atoms.end());
  out.conflicts = joint.conflicts();
  out.e_defensible =
      e_defensible(h_e, script.attacks_on_e, script.rebuttals_e, script.disinterested);
  out.a_defensible =
      e_defensible(h_a, script.attacks_on_a, script.rebuttals_a, script.disinterested);
  if (out.e_defensible && !out.a_defensible) {
    out.verdict = TruthVerdict::kEWins;
  } else if (out.a_defensible && !out.e_defensible) {
    out.verdict = TruthVerdict::kAWins;
  } else {
    out.verdict = TruthVerdict::kBothLose;
  }
  return out;
}

TruthOutcome two_history_outcome(const GameSpec& spec) {
  if (!spec.truth_game) {
    fail(ErrorKind::kReference, "scenario " + spec.name + " has no truth game");
  }
  const auto& tg = *spec.truth_game;
  return two_history_outcome(spec.history(tg.ulf_e), spec.history(tg.ulf_a), tg);
}

namespace {

// Distinct payloads the player's tables prescribe at a round, in table order.
std::vector<std::string> options_at(const GameSpec& spec, PlayerId player,
                                    std::size_t round) {
  std::vector<std::string> out;
  for (const auto& t : spec.type_space.strategies) {
    if (t.owner != player || round >= t.moves.size()) continue;
    if (std::find(out.begin(), out.end(), t.moves[round]) == out.end()) {
      out.push_back(t.moves[round]);
    }
  }
  return out;
}

}  // namespace

game::GameTree build_tree(const GameSpec& spec, const std::string& jury_type,
                          std::size_t depth) {
  if (depth > spec.script.rounds.size()) {
    fail(ErrorKind::kScript, "depth " + std::to_string(depth) + " exceeds the " +
                                 std::to_string(spec.script.rounds.size()) +
                                 " scripted rounds");
  }
  const game::Jury& jury = spec.jury(jury_type);
  const auto oracle = epistemic::make_posterior_oracle(spec);

  // Flatten the rounds into a sequence of decision points.
  struct Slot {
    PlayerId player;
    std::vector<game::Turn> choices;
    std::vector<std::string> labels;
  };
  std::vector<Slot> slots;
  for (std::size_t r = 0; r < depth; ++r) {
    for (const auto& scripted : spec.script.rounds[r]) {
      Slot s{scripted.player, {}, {}};
      for (const auto& payload : options_at(spec, scripted.player, r)) {
        game::Move m;
        m.payload = payload;
        m.player = scripted.player;
        s.choices.push_back(game::Turn{scripted.player, {m}});
        s.labels.push_back(payload);
      }
      if (s.choices.empty()) {
        s.choices.push_back(scripted);
        std::string label;
        for (const auto& m : scripted.moves) label += (label.empty() ? "" : "+") + m.payload;
        s.labels.push_back(label);
      }
      slots.push_back(std::move(s));
    }
  }

  game::GameTree tree;
  const game::Play start = spec.prefix_play();
  // Depth-first construction; each frame is (node index, slot index, play).
  std::vector<std::tuple<std::size_t, std::size_t, game::Play>> stack;
  auto make_node = [&](std::size_t slot, const game::Play& play) {
    if (slot == slots.size()) {
      return tree.add_node(1 - play.last_speaker().value_or(1),
                           game::evaluate_win(jury, play, oracle));
    }
    const std::size_t n = tree.add_node(slots[slot].player);
    stack.emplace_back(n, slot, play);
    return n;
  };
  make_node(0, start);
  while (!stack.empty()) {
    auto [n, slot, play] = stack.back();
    stack.pop_back();
    const Slot& s = slots[slot];
    for (std::size_t c = 0; c < s.choices.size(); ++c) {
      const game::Play next = game::extend(play, s.choices[c]);
      const std::size_t child = make_node(slot + 1, next);
      tree.add_edge(n, s.labels[c], s.choices[c], child);
    }
  }
  return tree;
}

}  // namespace megame::analysis
