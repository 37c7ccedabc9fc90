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

#include "megame/epistemic.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "megame/error.hpp"
#include "megame/scenario.hpp"

namespace megame::epistemic {

const StrategyTable& TypeSpace::strategy(const std::string& id) const {
  for (const auto& s : strategies) {
    if (s.id == id) return s;
  }
  fail(ErrorKind::kReference, "unknown strategy " + id);
}

const Distribution<Profile>& TypeSpace::prior(const std::string& jury_type) const {
  auto it = priors.find(jury_type);
  if (it == priors.end()) fail(ErrorKind::kReference, "unknown jury type " + jury_type);
  return it->second;
}

std::optional<PlayerId> TypeSpace::owner_of_type(const std::string& type) const {
  for (PlayerId i : {0, 1}) {
    const auto& ts = player_types[static_cast<std::size_t>(i)];
    if (std::find(ts.begin(), ts.end(), type) != ts.end()) return i;
  }
  return std::nullopt;
}

std::vector<std::string> observed_moves(const game::Play& unscripted,
                                        PlayerId owner) {
  std::vector<std::string> out;
  for (const auto& t : unscripted.turns()) {
    if (t.player != owner) continue;
    std::string joined;
    for (const auto& m : t.moves) {
      if (!joined.empty()) joined += '+';
      joined += m.payload;
    }
    out.push_back(std::move(joined));
  }
  return out;
}

bool table_compatible(const StrategyTable& table,
                      const std::vector<std::string>& observed) {
  const std::size_t n = std::min(table.moves.size(), observed.size());
  for (std::size_t r = 0; r < n; ++r) {
    if (table.moves[r] != observed[r]) return false;
  }
  return true;
}

std::vector<StrategyTable> compatible(const std::vector<StrategyTable>& tables,
                                      PlayerId owner,
                                      const std::vector<std::string>& observed) {
  std::vector<StrategyTable> out;
  for (const auto& t : tables) {
    if (t.owner == owner && table_compatible(t, observed)) out.push_back(t);
  }
  return out;
}

bool profile_compatible(const TypeSpace& ts, const Profile& profile,
                        const game::Play& unscripted) {
  for (PlayerId i : {0, 1}) {
    if (!table_compatible(ts.strategy(profile.strategy(i)),
                          observed_moves(unscripted, i))) {
      return false;
    }
  }
  return true;
}

Distribution<TypeTuple> type_marginal(const Distribution<Profile>& belief) {
  return push_forward(belief, [](const Profile& p) {
    return TypeTuple{p.type0, p.type1};
  });
}

Distribution<std::string> player_type_marginal(const Distribution<Profile>& belief,
                                               PlayerId player) {
  return push_forward(belief, [player](const Profile& p) { return p.type(player); });
}

Distribution<std::size_t> interpret(const TypeSpace& ts, const std::string& jury_type,
                                    const TypeTuple& types, const std::string& ulf) {
  auto it = ts.kernels.find(KernelKey{jury_type, types, ulf});
  if (it != ts.kernels.end()) return it->second;
  auto count = ts.completion_counts.find(ulf);
  if (count != ts.completion_counts.end() && count->second == 1) {
    return Distribution<std::size_t>::point(0);
  }
  fail(ErrorKind::kKernelGap, "kernel gap: no interpretation of " + ulf + " for (" +
                                  jury_type + ", " + types.first + ", " +
                                  types.second + ")");
}

Distribution<std::size_t> marginal_over_histories(
    const TypeSpace& ts, const std::string& jury_type,
    const Distribution<TypeTuple>& belief, const std::string& ulf) {
  Distribution<std::size_t>::Weights mix;
  for (const auto& [types, w] : belief.weights()) {
    const auto kernel = interpret(ts, jury_type, types, ulf);
    for (const auto& [h, q] : kernel.weights()) {
      mix[h] += w * q;
    }
  }
  return Distribution<std::size_t>::from_weights(mix, "history mixture");
}

Distribution<TypeTuple> marginal_over_types(const TypeSpace& ts,
                                            const std::string& jury_type,
                                            const Distribution<TypeTuple>& belief,
                                            const std::string& ulf, std::size_t h) {
  Distribution<TypeTuple>::Weights joint;
  Rational total = 0;
  for (const auto& [types, w] : belief.weights()) {
    const Rational q = w * interpret(ts, jury_type, types, ulf).probability(h);
    joint[types] = q;
    total += q;
  }
  if (total == 0) {
    fail(ErrorKind::kNullEvent, "conditioning on null event: completion " +
                                    std::to_string(h) + " has zero mixture mass");
  }
  for (auto& [_, q] : joint) q /= total;
  return Distribution<TypeTuple>::from_weights(joint, "type posterior");
}

game::Play unscripted_part(const GameSpec& spec, const game::Play& play) {
  const auto prefix_moves = spec.prefix_play().moves();
  const auto moves = play.moves();
  if (prefix_moves.empty() || moves.size() < prefix_moves.size() ||
      !std::equal(prefix_moves.begin(), prefix_moves.end(), moves.begin())) {
    return play;
  }
  return game::Play::from_moves(
      std::vector<game::Move>(moves.begin() + static_cast<std::ptrdiff_t>(prefix_moves.size()),
                              moves.end()));
}

std::optional<Distribution<Profile>> posterior_after(const GameSpec& spec,
                                                     const std::string& jury_type,
                                                     const game::Play& play) {
  const auto& ts = spec.type_space;
  const auto& prior = ts.prior(jury_type);
  const game::Play rest = unscripted_part(spec, play);
  auto in_event = [&](const Profile& p) { return profile_compatible(ts, p, rest); };
  if (prior.mass_where(in_event) == 0) return std::nullopt;
  return condition_on(prior, in_event);
}

game::PosteriorOracle make_posterior_oracle(const GameSpec& spec) {
  return [&spec](const game::Play& play, const std::string& jury_type,
                 const std::string& player_type) -> std::optional<Rational> {
    const auto owner = spec.type_space.owner_of_type(player_type);
    if (!owner) fail(ErrorKind::kReference, "unknown player type " + player_type);
    const auto post = posterior_after(spec, jury_type, play);
    if (!post) return std::nullopt;
    return post->mass_where([&](const Profile& p) { return p.type(*owner) == player_type; });
  };
}

BeliefTrajectory run_rounds(const GameSpec& spec, const std::string& jury_type,
                            std::size_t n) {
  const auto& ts = spec.type_space;
  if (n > spec.script.rounds.size()) {
    fail(ErrorKind::kScript, "script exhausted: " + std::to_string(n) +
                                 " rounds requested, " +
                                 std::to_string(spec.script.rounds.size()) +
                                 " scripted");
  }
  BeliefTrajectory out;
  out.jury_type = jury_type;
  out.player = spec.designated_player;
  out.player_types = ts.player_types[static_cast<std::size_t>(out.player)];

  Distribution<Profile> belief = ts.prior(jury_type);
  out.rounds.push_back({0, player_type_marginal(belief, out.player), std::nullopt});
  game::Play rest;
  for (std::size_t r = 1; r <= n; ++r) {
    for (const auto& turn : spec.script.rounds[r - 1]) rest = game::extend(rest, turn);
    auto in_event = [&](const Profile& p) { return profile_compatible(ts, p, rest); };
    const Rational mass = belief.mass_where(in_event);
    belief = condition_on(belief, in_event);
    out.rounds.push_back({r, player_type_marginal(belief, out.player), mass});
  }
  return out;
}

std::string trajectory_csv(const std::vector<BeliefTrajectory>& ts, bool header) {
  std::ostringstream os;
  if (header) {
    os << "round,jury_type,player_type,probability_num,probability_den,"
          "probability_float\n";
  }
  for (const auto& t : ts) {
    for (const auto& point : t.rounds) {
      for (const auto& type : t.player_types) {
        const Rational p = point.marginal.probability(type);
        os << point.round << ',' << t.jury_type << ',' << type << ','
           << numerator_of(p) << ',' << denominator_of(p) << ',' << to_decimal(p)
           << '\n';
      }
    }
  }
  return os.str();
}

std::string trajectory_jsonl(const std::vector<BeliefTrajectory>& ts) {
  std::ostringstream os;
  for (const auto& t : ts) {
    for (const auto& point : t.rounds) {
      for (const auto& type : t.player_types) {
        const Rational p = point.marginal.probability(type);
        os << "{\"round\":" << point.round
           << ",\"jury_type\":" << nlohmann::json(t.jury_type).dump()
           << ",\"player_type\":" << nlohmann::json(type).dump()
           << ",\"probability_num\":" << numerator_of(p)
           << ",\"probability_den\":" << denominator_of(p)
           << ",\"probability_float\":" << to_decimal(p) << "}\n";
      }
    }
  }
  return os.str();
}

bool check_prior_symmetry(const TypeSpace& ts, const std::string& jury_type,
                          const std::optional<std::map<std::string, std::string>>&
                              bijection) {
  const auto& t0 = ts.player_types[0];
  const auto& t1 = ts.player_types[1];
  if (t0.size() == 1 && t1.size() == 1) return true;

  std::map<std::string, std::string> forward, backward;
  if (bijection && !bijection->empty()) {
    forward = *bijection;
  } else {
    if (std::set<std::string>(t0.begin(), t0.end()) !=
        std::set<std::string>(t1.begin(), t1.end())) {
      fail(ErrorKind::kInvalidArgument, "incomparable type sets");
    }
    for (const auto& t : t0) forward[t] = t;
  }
  for (const auto& t : t0) {
    auto it = forward.find(t);
    if (it == forward.end() ||
        std::find(t1.begin(), t1.end(), it->second) == t1.end() ||
        !backward.emplace(it->second, t).second) {
      fail(ErrorKind::kInvalidArgument, "incomparable type sets");
    }
  }
  if (forward.size() != t0.size() || backward.size() != t1.size()) {
    fail(ErrorKind::kInvalidArgument, "incomparable type sets");
  }

  const auto marginal = type_marginal(ts.prior(jury_type));
  for (const auto& a : t0) {
    for (const auto& b : t1) {
      const TypeTuple swapped{backward.at(b), forward.at(a)};
      if (marginal.probability({a, b}) != marginal.probability(swapped)) return false;
    }
  }
  return true;
}

SafetyReport safety_check(const GameSpec& spec, const std::string& jury_type,
                          const game::Play& p1, const game::Play& p2) {
  const auto& ts = spec.type_space;
  const auto& prior = ts.prior(jury_type);
  const game::Play r1 = unscripted_part(spec, p1);
  const game::Play r2 = unscripted_part(spec, p2);
  std::set<Profile> e1, e2;
  for (const auto& p : prior.support()) {
    if (profile_compatible(ts, p, r1)) e1.insert(p);
    if (profile_compatible(ts, p, r2)) e2.insert(p);
  }
  SafetyReport report;
  report.events_equal = e1 == e2;
  if (!report.events_equal) {
    report.note = "events differ";
    return report;
  }
  if (e1.empty()) {
    report.note = "null event";
    return report;
  }
  report.safe = posterior_after(spec, jury_type, p1) == posterior_after(spec, jury_type, p2);
  report.note = report.safe ? "posteriors equal" : "posteriors differ";
  return report;
}

}  // namespace megame::epistemic
