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
#include "megame/distribution.hpp"
#include "megame/game.hpp"

namespace megame {
struct GameSpec;
}

namespace megame::epistemic {

// Prescribed payload per unscripted round, starting at the first one. Past
// its last entry a table prescribes nothing and matches any move.
struct StrategyTable {
  std::string id;
  PlayerId owner = 0;
  std::vector<std::string> moves;

  bool operator==(const StrategyTable&) const = default;
};

// One point of the type-and-strategy space.
struct Profile {
  std::string type0;
  std::string strategy0;
  std::string type1;
  std::string strategy1;

  const std::string& type(PlayerId i) const { return i == 0 ? type0 : type1; }
  const std::string& strategy(PlayerId i) const {
    return i == 0 ? strategy0 : strategy1;
  }
  auto operator<=>(const Profile&) const = default;
};

using TypeTuple = std::pair<std::string, std::string>;

struct KernelKey {
  std::string jury_type;
  TypeTuple types;
  std::string ulf;

  auto operator<=>(const KernelKey&) const = default;
};

struct TypeSpace {
  std::array<std::vector<std::string>, 2> player_types;
  std::vector<std::string> jury_types;
  std::vector<StrategyTable> strategies;
  std::map<std::string, Distribution<Profile>> priors;
  std::map<KernelKey, Distribution<std::size_t>> kernels;
  // Number of coherent completions per ULF id.
  std::map<std::string, std::size_t> completion_counts;

  const StrategyTable& strategy(const std::string& id) const;
  const Distribution<Profile>& prior(const std::string& jury_type) const;
  // Which player owns a type id; nullopt if neither does.
  std::optional<PlayerId> owner_of_type(const std::string& type) const;

  bool operator==(const TypeSpace&) const = default;
};

// Owner's payload per round in an unscripted play segment. A turn with
// several moves is rendered as their payloads joined by '+'.
std::vector<std::string> observed_moves(const game::Play& unscripted,
                                        PlayerId owner);

bool table_compatible(const StrategyTable& table,
                      const std::vector<std::string>& observed);

// Tables of the given owner that agree with the observed moves at every
// elapsed round.
std::vector<StrategyTable> compatible(const std::vector<StrategyTable>& tables,
                                      PlayerId owner,
                                      const std::vector<std::string>& observed);

// Profiles whose two strategies are both compatible with the play segment.
bool profile_compatible(const TypeSpace& ts, const Profile& profile,
                        const game::Play& unscripted);

Distribution<TypeTuple> type_marginal(const Distribution<Profile>& belief);
Distribution<std::string> player_type_marginal(const Distribution<Profile>& belief,
                                               PlayerId player);

// Kernel entry for the arguments. A ULF with exactly one completion yields a
// point mass when no entry exists. Throws Error(kKernelGap) otherwise.
Distribution<std::size_t> interpret(const TypeSpace& ts, const std::string& jury_type,
                                    const TypeTuple& types, const std::string& ulf);

Distribution<std::size_t> marginal_over_histories(
    const TypeSpace& ts, const std::string& jury_type,
    const Distribution<TypeTuple>& belief, const std::string& ulf);

// Bayes with the kernel as likelihood of completion h.
Distribution<TypeTuple> marginal_over_types(const TypeSpace& ts,
                                            const std::string& jury_type,
                                            const Distribution<TypeTuple>& belief,
                                            const std::string& ulf, std::size_t h);

// The moves after the scripted prefix, or the whole play when it does not
// start with that prefix.
game::Play unscripted_part(const GameSpec& spec, const game::Play& play);

// Jury posterior over profiles after the play; nullopt on a null event.
std::optional<Distribution<Profile>> posterior_after(const GameSpec& spec,
                                                     const std::string& jury_type,
                                                     const game::Play& play);

// Oracle for posterior-threshold winning conditions.
game::PosteriorOracle make_posterior_oracle(const GameSpec& spec);

struct TrajectoryPoint {
  std::size_t round = 0;
  Distribution<std::string> marginal;  // over the designated player's types
  std::optional<Rational> event_mass;  // mass of the round's event, if any
};

struct BeliefTrajectory {
  std::string jury_type;
  PlayerId player = 0;
  std::vector<std::string> player_types;  // row order for exports
  std::vector<TrajectoryPoint> rounds;
};

// Conditionalizes the prior round by round on play compatibility and
// records the designated player's type marginal. Throws Error(kScript) when
// n exceeds the scripted rounds.
BeliefTrajectory run_rounds(const GameSpec& spec, const std::string& jury_type,
                            std::size_t n);

// round,jury_type,player_type,probability_num,probability_den,probability_float
std::string trajectory_csv(const std::vector<BeliefTrajectory>& ts,
                           bool header = true);
// One JSON object per line with the same fields.
std::string trajectory_jsonl(const std::vector<BeliefTrajectory>& ts);

// Invariance of the prior's type-pair marginal under swapping roles through
// a bijection from player 0's types onto player 1's. Without a bijection the
// identity is used when both players have the same type set. Throws
// Error(kInvalidArgument, "incomparable type sets") when no bijection fits.
bool check_prior_symmetry(const TypeSpace& ts, const std::string& jury_type,
                          const std::optional<std::map<std::string, std::string>>&
                              bijection);

struct SafetyReport {
  bool safe = true;
  bool events_equal = false;
  std::string note;
};

// Equal compatibility events must yield equal posteriors.
SafetyReport safety_check(const GameSpec& spec, const std::string& jury_type,
                          const game::Play& p1, const game::Play& p2);

}  // namespace megame::epistemic
