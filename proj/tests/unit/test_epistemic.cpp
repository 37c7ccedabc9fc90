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

#include "support.hpp"

#include "megame/epistemic.hpp"
#include "megame/error.hpp"
#include "megame/scenario.hpp"

#include <doctest.h>

#include <random>

using namespace megame;
using namespace megame::epistemic;
using namespace megame::testing;

namespace {

std::vector<std::string> ids(const std::vector<StrategyTable>& tables) {
  std::vector<std::string> out;
  for (const auto& t : tables) out.push_back(t.id);
  return out;
}

// Two players over the same types {a, b}, one strategy each.
TypeSpace symmetric_space(const Rational& p_ab, const Rational& p_ba) {
  TypeSpace ts;
  ts.player_types = {std::vector<std::string>{"a", "b"}, std::vector<std::string>{"a", "b"}};
  ts.jury_types = {"tj"};
  ts.strategies = {{"s0", 0, {}}, {"s1", 1, {}}};
  Distribution<Profile>::Weights w;
  w[{"a", "s0", "b", "s1"}] = p_ab;
  w[{"b", "s0", "a", "s1"}] = p_ba;
  ts.priors.emplace("tj", Distribution<Profile>::from_weights(w));
  return ts;
}

}  // namespace

TEST_CASE("compatible strategy tables follow the scripted rounds") {
  const GameSpec s = builtin("sheehan");
  const auto& tables = s.type_space.strategies;
  const std::vector<std::string> all{"sigma1", "sigma2", "sigma3", "sigma4",
                                     "sigma5", "sigma6", "sigma7"};
  CHECK(ids(compatible(tables, 1, {})) == all);
  const auto after1 = observed_moves(unscripted_part(s, s.scripted_play(1)), 1);
  CHECK(after1 == std::vector<std::string>{"phi_alpha"});
  CHECK(ids(compatible(tables, 1, after1)) ==
        std::vector<std::string>{"sigma3", "sigma4", "sigma5", "sigma6", "sigma7"});
  const auto after2 = observed_moves(unscripted_part(s, s.scripted_play(2)), 1);
  CHECK(ids(compatible(tables, 1, after2)) ==
        std::vector<std::string>{"sigma5", "sigma6", "sigma7"});
  CHECK(ids(compatible(tables, 0, after2)).empty());
  CHECK(ids(compatible(tables, 0, {"phi_Q", "phi_Q"})) == std::vector<std::string>{"ask"});
}

TEST_CASE("observed_moves joins multi-move turns") {
  const game::Play p = play({{"x", 0}, {"y", 1}, {"z", 1}, {"w", 0}});
  CHECK(observed_moves(p, 1) == std::vector<std::string>{"y+z"});
  CHECK(observed_moves(p, 0) == std::vector<std::string>{"x", "w"});
}

TEST_CASE("bayes_update examples") {
  const auto prior = Distribution<int>::from_weights({{1, q(1, 2)}, {2, q(1, 4)}, {3, q(1, 4)}});
  const auto post = bayes_update(prior, std::set<int>{2, 3});
  CHECK(post.probability(2) == q(1, 2));
  CHECK(post.probability(3) == q(1, 2));
  CHECK(post.probability(1) == 0);
  CHECK(bayes_update(prior, std::set<int>{1, 2, 3}) == prior);
  CHECK_THROWS_AS(bayes_update(prior, std::set<int>{4}), Error);
  try {
    bayes_update(prior, std::set<int>{});
    FAIL("expected a null event");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNullEvent);
  }
}

TEST_CASE("bayes_update satisfies the ratio property on random instances") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Distribution<int>::Weights w;
    long long total = 0;
    std::vector<long long> raw;
    for (int i = 0; i < n; ++i) {
      raw.push_back(1 + rng() % 20);
      total += raw.back();
    }
    for (int i = 0; i < n; ++i) w[i] = q(raw[i], total);
    const auto prior = Distribution<int>::from_weights(w);
    std::set<int> event;
    for (int i = 0; i < n; ++i) {
      if (rng() % 2) event.insert(i);
    }
    if (event.empty()) event.insert(0);
    const auto post = bayes_update(prior, event);
    for (int i : event) {
      for (int j : event) {
        REQUIRE(post.probability(i) * prior.probability(j) ==
                post.probability(j) * prior.probability(i));
      }
    }
    for (int i = 0; i < n; ++i) {
      if (!event.count(i)) REQUIRE(post.probability(i) == 0);
    }
  }
}

TEST_CASE("interpret examples") {
  const GameSpec s = builtin("sheehan");
  const auto& ts = s.type_space;
  CHECK(interpret(ts, "tj_B", {"t_R", "t_H"}, "rho") == Distribution<std::size_t>::point(7));
  const auto skeptic = interpret(ts, "tj_U", {"t_R", "t_D"}, "rho2");
  CHECK(skeptic.probability(0) == q(9, 10));
  CHECK(skeptic.probability(0) > skeptic.probability(1));
  try {
    interpret(ts, "tj_U", {"t_R", "t_X"}, "rho");
    FAIL("expected a kernel gap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kKernelGap);
  }
}

TEST_CASE("marginals over histories and types") {
  const GameSpec s = builtin("sheehan");
  const auto& ts = s.type_space;
  const TypeTuple honest{"t_R", "t_H"};
  const TypeTuple dishonest{"t_R", "t_D"};
  const auto belief = Distribution<TypeTuple>::uniform(std::vector<TypeTuple>{honest, dishonest});
  const auto hist = marginal_over_histories(ts, "tj_U", belief, "rho");
  CHECK(hist.probability(0) == q(13, 20));
  CHECK(hist.probability(7) == q(7, 20));
  const auto types = marginal_over_types(ts, "tj_U", belief, "rho", 0);
  CHECK(types.probability(honest) == q(4, 13));
  CHECK(types.probability(dishonest) == q(9, 13));
  CHECK_THROWS_AS(marginal_over_types(ts, "tj_U", belief, "rho", 3), Error);

  // Averaging the posteriors by the history marginal gives back the belief.
  for (const auto& ulf : {"rho", "rho2"}) {
    for (const auto& jt : {"tj_U", "tj_B"}) {
      Distribution<TypeTuple>::Weights w;
      w[honest] = q(3, 7);
      w[dishonest] = q(4, 7);
      const auto b = Distribution<TypeTuple>::from_weights(w);
      const auto m = marginal_over_histories(ts, jt, b, ulf);
      std::map<TypeTuple, Rational> mix;
      for (const auto& [h, ph] : m.weights()) {
        const auto post = marginal_over_types(ts, jt, b, ulf, h);
        for (const auto& [t, pt] : post.weights()) {
          mix[t] += ph * pt;
        }
      }
      for (const auto& [t, pt] : b.weights()) CHECK(mix[t] == pt);
    }
  }
}

TEST_CASE("run_rounds trajectories") {
  const GameSpec s = builtin("sheehan");
  const auto u = run_rounds(s, "tj_U", 2);
  REQUIRE(u.rounds.size() == 3);
  CHECK(u.rounds[0].marginal.probability("t_H") == q(1, 2));
  CHECK_FALSE(u.rounds[0].event_mass.has_value());
  CHECK(u.rounds[1].marginal.probability("t_H") == q(8, 17));
  CHECK(u.rounds[2].marginal.probability("t_H") == q(2, 5));
  CHECK(*u.rounds[1].event_mass == q(17, 24));
  CHECK(*u.rounds[2].event_mass == q(10, 17));

  const auto b = run_rounds(s, "tj_B", 2);
  CHECK(b.rounds[0].marginal.probability("t_H") == q(7, 10));
  CHECK(b.rounds[1].marginal.probability("t_H") == q(21, 29));
  CHECK(b.rounds[2].marginal.probability("t_H") == q(7, 9));
  CHECK(*b.rounds[1].event_mass == q(29, 40));
  CHECK(*b.rounds[2].event_mass == q(18, 29));

  CHECK(run_rounds(s, "tj_U", 0).rounds.size() == 1);
  try {
    run_rounds(s, "tj_U", 4);
    FAIL("expected the script to run out");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kScript);
    CHECK(std::string(e.what()).find("script exhausted") != std::string::npos);
  }
}

TEST_CASE("trajectory exports") {
  const GameSpec s = builtin("sheehan");
  const auto csv = trajectory_csv({run_rounds(s, "tj_U", 1)});
  CHECK(csv.rfind("round,jury_type,player_type,probability_num,probability_den,"
                  "probability_float\n", 0) == 0);
  CHECK(csv.find("1,tj_U,t_H,8,17,0.470588235294\n") != std::string::npos);
  CHECK(csv.find("0,tj_U,t_D,1,2,0.5\n") != std::string::npos);
  CHECK(trajectory_csv({run_rounds(s, "tj_U", 1)}, false).find("round") == std::string::npos);
  const auto jsonl = trajectory_jsonl({run_rounds(s, "tj_B", 1)});
  CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 4);
  CHECK(jsonl.find("\"probability_float\":0.724137931034") != std::string::npos);
}

TEST_CASE("to_decimal renders twelve significant digits") {
  CHECK(to_decimal(q(1, 3)) == "0.333333333333");
  CHECK(to_decimal(q(2, 3)) == "0.666666666667");
  CHECK(to_decimal(q(1, 2)) == "0.5");
  CHECK(to_decimal(q(0)) == "0");
  CHECK(to_decimal(q(-7, 9)) == "-0.777777777778");
}

TEST_CASE("check_prior_symmetry") {
  CHECK(check_prior_symmetry(symmetric_space(q(1, 2), q(1, 2)), "tj", std::nullopt));
  CHECK_FALSE(check_prior_symmetry(symmetric_space(q(3, 5), q(2, 5)), "tj", std::nullopt));
  const GameSpec s = builtin("sheehan");
  try {
    check_prior_symmetry(s.type_space, "tj_U", std::nullopt);
    FAIL("expected incomparable type sets");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("incomparable type sets") != std::string::npos);
  }
  const std::map<std::string, std::string> swap{{"a", "b"}, {"b", "a"}};
  CHECK(check_prior_symmetry(symmetric_space(q(1, 2), q(1, 2)), "tj", swap));
  TypeSpace diagonal = symmetric_space(q(1, 2), q(1, 2));
  Distribution<Profile>::Weights w;
  w[{"a", "s0", "a", "s1"}] = q(3, 5);
  w[{"b", "s0", "b", "s1"}] = q(2, 5);
  diagonal.priors.at("tj") = Distribution<Profile>::from_weights(w);
  CHECK(check_prior_symmetry(diagonal, "tj", std::nullopt));
  CHECK_FALSE(check_prior_symmetry(diagonal, "tj", swap));
  const std::map<std::string, std::string> partial{{"a", "a"}};
  CHECK_THROWS_AS(check_prior_symmetry(symmetric_space(q(1, 2), q(1, 2)), "tj", partial),
                  Error);
}

TEST_CASE("safety_check") {
  const GameSpec s = builtin("sheehan");
  const auto p1 = s.scripted_play(1);
  const auto same = safety_check(s, "tj_U", p1, p1);
  CHECK(same.safe);
  CHECK(same.events_equal);
  CHECK(same.note == "posteriors equal");

  game::Play asked = s.prefix_play();
  asked = game::extend(asked, turn(0, {"phi_Q"}));
  const auto differ = safety_check(s, "tj_U", p1, asked);
  CHECK_FALSE(differ.events_equal);
  CHECK(differ.note == "events differ");

  game::Play off1 = game::extend(s.prefix_play(), turn(0, {"phi_R"}));
  game::Play off2 = game::extend(off1, turn(1, {"phi_no"}));
  const auto null_event = safety_check(s, "tj_U", off1, off2);
  CHECK(null_event.events_equal);
  CHECK(null_event.note == "null event");
}

TEST_CASE("posterior oracle") {
  const GameSpec s = builtin("sheehan");
  const auto oracle = game::PosteriorOracle(make_posterior_oracle(s));
  CHECK(*oracle(s.scripted_play(2), "tj_U", "t_H") == q(2, 5));
  CHECK(*oracle(s.scripted_play(0), "tj_B", "t_H") == q(7, 10));
  CHECK_THROWS_AS(oracle(s.scripted_play(0), "tj_B", "t_Z"), Error);
  const auto off = game::extend(s.prefix_play(), turn(0, {"phi_R"}));
  CHECK_FALSE(oracle(off, "tj_U", "t_H").has_value());
}
