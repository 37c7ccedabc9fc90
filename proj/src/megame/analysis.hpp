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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "megame/discourse.hpp"
#include "megame/game.hpp"
#include "megame/rational.hpp"
#include "megame/scenario.hpp"

namespace megame::analysis {

// Completions of the ULF with positive kernel mass under some type tuple in
// the support of the jury type's prior.
std::set<std::size_t> live_completions(const GameSpec& spec,
                                       const std::string& jury_type,
                                       const std::string& ulf);

struct AmbiguityReport {
  bool ambiguous = false;
  std::set<std::size_t> live;
  std::optional<std::pair<std::size_t, std::size_t>> distinct_pair;
};

AmbiguityReport ambiguity(const GameSpec& spec, const std::string& jury_type,
                          const std::string& ulf);
bool is_ambiguous(const GameSpec& spec, const std::string& jury_type,
                  const std::string& ulf);

struct DogWhistleWitness {
  std::size_t loaded_history = 0;
  std::size_t grammar_history = 0;
  std::string affected_jury;
  bool denial_available = true;
  Rational loaded_score = 0;
  Rational grammar_score = 0;
};

// jury_pool empty means every jury type that scores this ULF. Throws
// Error(kInvalidArgument) when grammar_h is not a completion and
// Error(kReference) when a pool jury lacks a needed score.
std::optional<DogWhistleWitness> is_dog_whistle(
    const GameSpec& spec, const std::string& jury_type, const std::string& ulf,
    std::size_t grammar_h, const std::vector<std::string>& jury_pool = {});

// First play of length 1..maxlen over the vocabulary, with either speaker
// on every move, on which the jury is not indifferent to player identity.
std::optional<game::Play> indifference_counterexample(
    const game::Jury& jury, const std::vector<std::string>& vocabulary,
    std::size_t maxlen, const game::PosteriorOracle& oracle = {});

enum class Symmetry { kPass, kFail, kIncomparable };
std::string_view symmetry_name(Symmetry s);

struct DisinterestReport {
  std::optional<game::Play> counterexample;  // empty when indifference passes
  Symmetry symmetry = Symmetry::kFail;
  bool necessary_conditions_met = false;
};

DisinterestReport is_disinterested(const GameSpec& spec,
                                   const std::string& jury_type,
                                   std::size_t maxlen = 4);

enum class EvidenceTag {
  kConfirmationSurvives,
  kNoSurvivingConfirmation,
  kUnrebuttedRefutation,
};

struct EvidenceOutcome {
  EvidenceTag tag = EvidenceTag::kNoSurvivingConfirmation;
  std::string detail;
};

// P(evidence | a), P(evidence | not a).
using Likelihoods = std::pair<Rational, Rational>;

Rational truth_interested_update(const Rational& p, const EvidenceOutcome& o,
                                 const std::optional<Likelihoods>& likelihoods = {});

struct EvidenceStep {
  EvidenceOutcome outcome;
  std::optional<Likelihoods> likelihoods;
};

// Values after each step, in order.
std::vector<Rational> update_chain(const Rational& p,
                                   const std::vector<EvidenceStep>& steps);

// Minimum of the chain over the last ceil(horizon/4) steps up to the horizon.
Rational liminf_update(const Rational& p, const std::vector<EvidenceStep>& steps,
                       std::size_t horizon);

enum class Stance { kNegative, kOpen, kPositive };
Stance stance(const Rational& p);

struct AgreementInput {
  std::array<std::vector<Rational>, 2> beliefs;  // per player, per fact
  std::array<bool, 2> truth_interested{true, true};
  std::array<std::vector<Ground>, 2> grounds;
  std::size_t max_rounds = 0;
};

struct AgreementOutcome {
  bool agreed = false;
  // Each player's history, encoded as the base-3 number of per-fact stances.
  std::array<std::size_t, 2> final_histories{0, 0};
  std::size_t rounds_used = 0;
  std::array<std::vector<Rational>, 2> final_beliefs;
};

std::size_t history_index(const std::vector<Rational>& beliefs);

AgreementOutcome simulate_agreement(const AgreementInput& in);

// 0, step, 2*step, ..., 1.
std::vector<Rational> prior_grid(const Rational& step);

struct SweepReport {
  std::size_t instances = 0;
  std::size_t agreed = 0;
  std::size_t max_rounds_used = 0;
  std::optional<AgreementInput> first_disagreement;
};

// Player 0 starts fact j at grid[(a + j) mod n] and player 1 at
// grid[(b + 2j) mod n], for every pair of grid indices (a, b).
SweepReport agreement_sweep(const AgreementSpec& spec, const Rational& step,
                            std::size_t max_rounds);

bool e_defensible(const discourse::History& h,
                  const std::vector<game::Move>& attacks,
                  const std::map<std::string, game::Move>& rebuttals,
                  bool disinterested);

struct ExtenderRule {
  UnitId fact;
  discourse::RelationInstance relation;
};

struct DefensibilityContext {
  std::vector<game::Move> attacks;
  std::map<std::string, game::Move> rebuttals;
  bool disinterested = false;
};

bool is_predictive(const discourse::History& h,
                   const std::vector<discourse::Edu>& new_facts,
                   const std::vector<ExtenderRule>& extender,
                   const DefensibilityContext& context);

enum class TruthVerdict { kEWins, kAWins, kBothLose };
std::string_view truth_verdict_name(TruthVerdict v);

struct TruthOutcome {
  TruthVerdict verdict = TruthVerdict::kBothLose;
  bool e_defensible = false;
  bool a_defensible = false;
  std::vector<std::string> conflicts;  // atoms committed with both polarities
};

// The ulf fields of the script are not consulted.
TruthOutcome two_history_outcome(const discourse::History& h_e,
                                 const discourse::History& h_a,
                                 const TruthGameSpec& script);
TruthOutcome two_history_outcome(const GameSpec& spec);

// Game tree over the first depth scripted rounds. At each turn the mover
// may play any payload one of their strategy tables prescribes for that
// round, or the scripted turn when none does. Leaves are labeled by the
// jury type's winning condition on prefix + path.
game::GameTree build_tree(const GameSpec& spec, const std::string& jury_type,
                          std::size_t depth);

}  // namespace megame::analysis
