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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails. argv[1] is the path of the megame CLI.

#include "megame/analysis.hpp"
#include "megame/distribution.hpp"
#include "megame/epistemic.hpp"
#include "megame/error.hpp"
#include "megame/game.hpp"
#include "megame/scenario.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace megame;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Rational q(long long num, long long den = 1) { return make_rational(num, den); }

// Collects failed expectations for one criterion.
class Criterion {
 public:
  Criterion(int number, std::string title) : number_(number), title_(std::move(title)) {}

  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }

  void note(const std::string& text) { notes_.push_back(text); }

  // Prints the verdict line and returns whether the criterion passed.
  bool report() const {
    std::ostringstream line;
    line << (failed_ == 0 ? "PASS" : "FAIL") << ' ' << number_ << ' ' << title_ << ": "
         << checks_ << " checks";
    for (const auto& n : notes_) line << "; " << n;
    for (const auto& f : failures_) line << "; failed: " << f;
    if (failed_ > failures_.size()) line << "; " << failed_ - failures_.size() << " more";
    std::cout << line.str() << std::endl;
    return failed_ == 0;
  }

 private:
  int number_;
  std::string title_;
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

bool near(const Rational& exact, double printed, double tol) {
  return std::fabs(to_double(exact) - printed) <= tol + 1e-12;
}

// ---------------------------------------------------------------- 1 to 3

std::vector<Rational> column(const epistemic::BeliefTrajectory& t, const std::string& type) {
  std::vector<Rational> out;
  for (const auto& p : t.rounds) out.push_back(p.marginal.probability(type));
  return out;
}

void check_trajectory(Criterion& c, const epistemic::BeliefTrajectory& t,
                      const std::string& type, const std::vector<Rational>& exact,
                      const std::vector<double>& printed, double tol) {
  const auto got = column(t, type);
  c.expect(got.size() == exact.size(), t.jury_type + " " + type + " round count");
  for (std::size_t r = 0; r < std::min(got.size(), exact.size()); ++r) {
    const std::string where = t.jury_type + " " + type + " round " + std::to_string(r);
    c.expect(got[r] == exact[r], where + " = " + to_string(got[r]) + ", want " +
                                     to_string(exact[r]));
    c.expect(near(got[r], printed[r], tol),
             where + " " + fixed(to_double(got[r])) + " vs printed " + fixed(printed[r]));
  }
}

bool criterion_1() {
  Criterion c(1, "sheehan tj_U trajectory");
  const auto start = Clock::now();
  const GameSpec s = builtin("sheehan");
  const auto t = epistemic::run_rounds(s, "tj_U", 2);
  const double elapsed = seconds_since(start);
  check_trajectory(c, t, "t_H", {q(1, 2), q(8, 17), q(2, 5)}, {0.5, 0.476, 0.404}, 0.01);
  check_trajectory(c, t, "t_D", {q(1, 2), q(9, 17), q(3, 5)}, {0.5, 0.525, 0.596}, 0.01);
  c.expect(elapsed < 1.0, "runtime " + fixed(elapsed) + " s");
  c.note("runtime " + fixed(elapsed, 4) + " s");
  return c.report();
}

bool criterion_2() {
  Criterion c(2, "sheehan tj_B trajectory and event masses");
  const GameSpec s = builtin("sheehan");
  const auto b = epistemic::run_rounds(s, "tj_B", 2);
  check_trajectory(c, b, "t_H", {q(7, 10), q(21, 29), q(7, 9)}, {0.7, 0.725, 0.778}, 0.005);
  check_trajectory(c, b, "t_D", {q(3, 10), q(8, 29), q(2, 9)}, {0.3, 0.275, 0.222}, 0.005);
  // The printed masses are the first-round event under tj_U and the
  // second-round event under tj_B.
  const auto u = epistemic::run_rounds(s, "tj_U", 2);
  const auto& m1 = u.rounds.at(1).event_mass;
  const auto& m2 = b.rounds.at(2).event_mass;
  c.expect(m1 && *m1 == q(17, 24), "tj_U round 1 mass is 17/24");
  c.expect(m2 && *m2 == q(18, 29), "tj_B round 2 mass is 18/29");
  c.expect(m1 && near(*m1, 0.708, 0.001), "tj_U round 1 mass vs 0.708");
  c.expect(m2 && near(*m2, 0.620, 0.001), "tj_B round 2 mass vs 0.620");
  if (m1 && m2) c.note("masses " + to_string(*m1) + ", " + to_string(*m2));
  return c.report();
}

bool criterion_3() {
  Criterion c(3, "monotone belief change over the repetition rounds");
  const GameSpec s = builtin("sheehan");
  const auto d = column(epistemic::run_rounds(s, "tj_U", 2), "t_D");
  const auto h = column(epistemic::run_rounds(s, "tj_B", 2), "t_H");
  for (std::size_t r = 1; r < 3; ++r) {
    c.expect(d[r] > d[r - 1], "tj_U t_D round " + std::to_string(r));
    c.expect(h[r] > h[r - 1], "tj_B t_H round " + std::to_string(r));
  }
  return c.report();
}

// ---------------------------------------------------------------- 4

bool criterion_4() {
  Criterion c(4, "Bayes identities on 1000 random instances");
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);
    std::vector<long long> raw(n);
    long long total = 0;
    for (auto& w : raw) total += (w = 1 + static_cast<long long>(rng() % 97));
    Distribution<int>::Weights weights;
    for (int i = 0; i < n; ++i) weights[i] = q(raw[i], total);
    const auto prior = Distribution<int>::from_weights(weights);

    const int blocks = 1 + static_cast<int>(rng() % n);
    std::vector<std::set<int>> partition(blocks);
    for (int i = 0; i < n; ++i) partition[i < blocks ? i : rng() % blocks].insert(i);
    std::set<int> a;
    for (int i = 0; i < n; ++i) {
      if (rng() % 2) a.insert(i);
    }

    Rational total_prob = 0;
    for (const auto& block : partition) {
      const auto post = bayes_update(prior, block);
      total_prob += post.mass(a) * prior.mass(block);
      bool support_ok = true;
      for (const auto& k : post.support()) support_ok = support_ok && block.count(k) > 0;
      c.expect(support_ok, "posterior support in trial " + std::to_string(trial));
      bool ratio_ok = true;
      for (int i : block) {
        for (int j : block) {
          ratio_ok = ratio_ok && post.probability(i) * prior.probability(j) ==
                                     post.probability(j) * prior.probability(i);
        }
      }
      c.expect(ratio_ok, "ratio preservation in trial " + std::to_string(trial));
    }
    c.expect(total_prob == prior.mass(a), "total probability in trial " + std::to_string(trial));
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 10.0, "runtime " + fixed(elapsed) + " s");
  c.note("runtime " + fixed(elapsed) + " s");
  return c.report();
}

// ---------------------------------------------------------------- 5

void for_each_play(const std::vector<std::string>& symbols, std::size_t len,
                   const std::function<void(const game::Play&)>& visit) {
  const std::size_t alphabet = symbols.size() * 2;
  std::vector<std::size_t> digits(len, 0);
  while (true) {
    std::vector<game::Move> ms;
    for (const auto d : digits) {
      game::Move m;
      m.payload = symbols[d / 2];
      m.player = static_cast<PlayerId>(d % 2);
      ms.push_back(m);
    }
    visit(game::Play::from_moves(ms));
    std::size_t i = len;
    while (i > 0 && ++digits[i - 1] == alphabet) digits[--i] = 0;
    if (i == 0) break;
  }
}

bool criterion_5(const std::string& cli) {
  Criterion c(5, "dual involution, symmetric jury indifference, tj_B not disinterested");
  const std::vector<std::string> symbols{"a", "b", "c"};
  std::size_t plays = 0;
  for (std::size_t len = 0; len <= 6; ++len) {
    const auto visit = [&](const game::Play& p) {
      const auto d = game::dual(p);
      ++plays;
      c.expect(game::dual(d) == p, "involution on " + p.str());
      c.expect(d.length() == p.length(), "length of dual " + p.str());
    };
    if (len == 0) {
      visit(game::Play{});
    } else {
      for_each_play(symbols, len, visit);
    }
  }
  c.note(std::to_string(plays) + " plays");

  const GameSpec toy = builtin("truth_toy");
  const game::Jury& jury = toy.jury("tj_D");
  const auto oracle = epistemic::make_posterior_oracle(toy);
  std::vector<std::string> vocab(toy.vocabulary.begin(),
                                 toy.vocabulary.begin() +
                                     static_cast<std::ptrdiff_t>(std::min<std::size_t>(
                                         3, toy.vocabulary.size())));
  std::size_t judged = 0;
  for (std::size_t len = 1; len <= 6; ++len) {
    for_each_play(vocab, len, [&](const game::Play& p) {
      const auto v = game::evaluate_win(jury, p, oracle);
      const auto vd = game::evaluate_win(jury, game::dual(p), oracle);
      ++judged;
      for (PlayerId i : {0, 1}) {
        const auto win_i = i == 0 ? game::Verdict::kWin0 : game::Verdict::kWin1;
        const auto win_other = i == 0 ? game::Verdict::kWin1 : game::Verdict::kWin0;
        c.expect((v == win_i) == (vd == win_other), "tj_D on " + p.str());
      }
    });
  }
  c.note(std::to_string(judged) + " tj_D plays");

  const std::string cmd = cli + " check disinterested sheehan --jury-type tj_B >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  const int status = raw != -1 && WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  c.expect(status == 1, "CLI exit status " + std::to_string(status) + " for tj_B");
  c.expect(!analysis::is_disinterested(builtin("sheehan"), "tj_B", 4).necessary_conditions_met,
           "library verdict for tj_B");
  return c.report();
}

// ---------------------------------------------------------------- 6

// A tree shape with leaf labels: leaf >= 0 is the winning player at a leaf.
struct Shape {
  int leaf = -1;
  std::vector<std::size_t> kids;
};

class ShapePool {
 public:
  // Shapes of depth <= depth, children drawn as multisets (ordered = false)
  // or sequences (ordered = true) of length 1..branching.
  ShapePool(std::size_t depth, std::size_t branching, bool ordered) {
    shapes_.push_back({0, {}});
    shapes_.push_back({1, {}});
    std::size_t below = 0;
    std::size_t upto = shapes_.size();
    for (std::size_t d = 1; d <= depth; ++d) {
      for (std::size_t b = 1; b <= branching; ++b) {
        std::vector<std::size_t> kids(b, 0);
        emit(kids, 0, upto, below, ordered);
      }
      below = upto;
      upto = shapes_.size();
    }
  }

  const std::vector<Shape>& shapes() const { return shapes_; }

 private:
  void emit(std::vector<std::size_t>& kids, std::size_t pos, std::size_t upto,
            std::size_t below, bool ordered) {
    if (pos == kids.size()) {
      std::size_t hi = 0;
      for (auto k : kids) hi = std::max(hi, k);
      if (hi >= below) shapes_.push_back({-1, kids});
      return;
    }
    const std::size_t first = ordered || pos == 0 ? 0 : kids[pos - 1];
    for (std::size_t k = first; k < upto; ++k) {
      kids[pos] = k;
      emit(kids, pos + 1, upto, below, ordered);
    }
  }

  std::vector<Shape> shapes_;
};

// Builds a game tree for a shape whose internal nodes are given by the
// caller-supplied child lists.
struct TreeBuilder {
  game::GameTree tree;

  std::size_t add(const std::function<const Shape&(std::size_t)>& shape_of, std::size_t id,
                  PlayerId mover) {
    const Shape& s = shape_of(id);
    if (s.leaf >= 0) {
      return tree.add_node(mover, s.leaf == 0 ? game::Verdict::kWin0 : game::Verdict::kWin1);
    }
    const std::size_t n = tree.add_node(mover);
    for (std::size_t i = 0; i < s.kids.size(); ++i) {
      const std::size_t child = add(shape_of, s.kids[i], 1 - mover);
      const std::string label = "c" + std::to_string(i);
      game::Turn t;
      t.player = mover;
      game::Move m;
      m.payload = label;
      m.player = mover;
      t.moves.push_back(m);
      tree.add_edge(n, label, t, child);
    }
    return n;
  }
};

// Independent minimax over the game tree.
PlayerId minimax(const game::GameTree& t, std::size_t n) {
  const auto& node = t.nodes[n];
  if (node.children.empty()) return node.leaf == game::Verdict::kWin0 ? 0 : 1;
  for (const auto& e : node.children) {
    if (minimax(t, e.child) == node.mover) return node.mover;
  }
  return 1 - node.mover;
}

// Follows the strategy at winner nodes and every branch elsewhere.
bool strategy_holds(const game::GameTree& t, const game::Solution& s, std::size_t n,
                    const std::string& path) {
  const auto& node = t.nodes[n];
  if (node.children.empty()) {
    return node.leaf == (s.winner == 0 ? game::Verdict::kWin0 : game::Verdict::kWin1);
  }
  if (node.mover == s.winner) {
    const auto it = s.strategy.find(path);
    if (it == s.strategy.end()) return false;
    for (const auto& e : node.children) {
      if (e.label == it->second) return strategy_holds(t, s, e.child, path + "/" + e.label);
    }
    return false;
  }
  for (const auto& e : node.children) {
    if (!strategy_holds(t, s, e.child, path + "/" + e.label)) return false;
  }
  return true;
}

void check_tree(Criterion& c, const game::GameTree& t, const std::string& family) {
  game::Solution s;
  try {
    s = game::solve_finite(t);
  } catch (const Error& e) {
    c.expect(false, family + ": solve_finite threw " + e.what());
    return;
  }
  c.expect(s.winner == 0 || s.winner == 1, family + ": winner out of range");
  c.expect(s.winner == minimax(t, 0), family + ": winner disagrees with minimax");
  c.expect(strategy_holds(t, s, 0, ""), family + ": strategy loses a playout");
  c.expect(game::strategy_wins_all_playouts(t, s), family + ": library playout check");
}

std::size_t check_pool(Criterion& c, const ShapePool& pool, const std::string& family) {
  const auto& shapes = pool.shapes();
  const auto shape_of = [&](std::size_t i) -> const Shape& { return shapes[i]; };
  std::size_t trees = 0;
  for (std::size_t id = 0; id < shapes.size(); ++id) {
    for (PlayerId root : {0, 1}) {
      TreeBuilder b;
      b.add(shape_of, id, root);
      check_tree(c, b.tree, family);
      ++trees;
    }
  }
  return trees;
}

// Random trees of depth up to 4; every internal node has 1..3 children and
// nodes above the last level stop early with probability 1/5.
game::GameTree random_tree(std::mt19937_64& rng) {
  std::vector<Shape> shapes;
  std::function<std::size_t(std::size_t)> grow = [&](std::size_t depth) -> std::size_t {
    Shape s;
    if (depth == 4 || (depth > 0 && rng() % 5 == 0)) {
      s.leaf = static_cast<int>(rng() % 2);
    } else {
      const std::size_t b = 1 + rng() % 3;
      for (std::size_t i = 0; i < b; ++i) s.kids.push_back(grow(depth + 1));
    }
    shapes.push_back(s);
    return shapes.size() - 1;
  };
  const std::size_t root = grow(0);
  TreeBuilder b;
  b.add([&](std::size_t i) -> const Shape& { return shapes[i]; }, root,
        static_cast<PlayerId>(rng() % 2));
  return b.tree;
}

bool criterion_6() {
  Criterion c(6, "determinacy of finite win-lose trees");
  const auto start = Clock::now();

  const ShapePool ordered(2, 3, true);
  const auto n_ordered = check_pool(c, ordered, "ordered depth<=2 branching<=3");
  c.note("all " + std::to_string(n_ordered) + " ordered trees of depth<=2, branching<=3");

  const ShapePool unordered(4, 2, false);
  const auto n_unordered = check_pool(c, unordered, "unordered depth<=4 branching<=2");
  c.note("all " + std::to_string(n_unordered) +
         " trees of depth<=4, branching<=2 up to child order");

  std::mt19937_64 rng(424242);
  const std::size_t n_random = 100000;
  for (std::size_t i = 0; i < n_random; ++i) check_tree(c, random_tree(rng), "random");
  c.note(std::to_string(n_random) + " random trees of depth<=4, branching<=3");

  const double elapsed = seconds_since(start);
  c.expect(elapsed < 60.0, "runtime " + fixed(elapsed) + " s");
  c.note("runtime " + fixed(elapsed, 1) + " s");
  return c.report();
}

// ---------------------------------------------------------------- 7

bool criterion_7() {
  Criterion c(7, "dog whistle and ambiguity on the builtins");
  const GameSpec lepen = builtin("lepen");
  const auto& grammar = lepen.grammar.at("lp");
  bool found = false;
  for (const auto& jt : lepen.type_space.jury_types) {
    const auto w = analysis::is_dog_whistle(lepen, jt, "lp", grammar);
    if (!w) continue;
    found = true;
    const auto hs = lepen.completions("lp").histories;
    c.expect(discourse::entails(hs.at(w->loaded_history), hs.at(w->grammar_history)),
             "lepen witness under " + jt + " entails the grammar reading");
    c.expect(w->loaded_score > w->grammar_score, "lepen witness scores");
  }
  c.expect(found, "lepen has a witness");

  const GameSpec sheehan = builtin("sheehan");
  for (const auto& jt : sheehan.type_space.jury_types) {
    c.expect(!analysis::is_dog_whistle(sheehan, jt, "rho", 0),
             "sheehan rho with grammar h1 under " + jt);
  }
  c.expect(analysis::is_ambiguous(sheehan, "tj_U", "rho"), "sheehan rho ambiguous under tj_U");
  return c.report();
}

// ---------------------------------------------------------------- 8

bool criterion_8() {
  Criterion c(8, "truth-interested players reach a common history");
  const std::vector<std::pair<Ground, Ground>> pairs{
      {Ground::kSound, Ground::kWeak}, {Ground::kWeak, Ground::kSound},
      {Ground::kWeak, Ground::kWeak}};
  std::size_t instances = 0, agreed = 0, stubborn_instances = 0, stubborn_disagreed = 0;
  for (std::size_t k = 1; k <= 4; ++k) {
    std::size_t combos = 1;
    for (std::size_t i = 0; i < k; ++i) combos *= pairs.size();
    for (std::size_t code = 0; code < combos; ++code) {
      AgreementSpec spec;
      std::size_t rest = code;
      for (std::size_t f = 0; f < k; ++f) {
        spec.facts.push_back("f" + std::to_string(f));
        const auto& [g0, g1] = pairs[rest % pairs.size()];
        rest /= pairs.size();
        spec.grounds[0].push_back(g0);
        spec.grounds[1].push_back(g1);
      }
      const auto sweep = analysis::agreement_sweep(spec, q(1, 10), k + 1);
      instances += sweep.instances;
      agreed += sweep.agreed;
      c.expect(sweep.agreed == sweep.instances,
               std::to_string(sweep.instances - sweep.agreed) + " disagreements with " +
                   std::to_string(k) + " facts, grounds code " + std::to_string(code));
      c.expect(sweep.max_rounds_used <= k + 1, "rounds used with " + std::to_string(k) + " facts");

      for (PlayerId stubborn : {0, 1}) {
        AgreementSpec s = spec;
        s.truth_interested[stubborn] = false;
        const auto r = analysis::agreement_sweep(s, q(1, 10), k + 1);
        stubborn_instances += r.instances;
        stubborn_disagreed += r.instances - r.agreed;
      }
    }
  }
  c.expect(stubborn_disagreed > 0, "some instance with a non-truth-interested player disagrees");
  c.note(std::to_string(agreed) + "/" + std::to_string(instances) + " agreed");
  c.note(std::to_string(stubborn_disagreed) + "/" + std::to_string(stubborn_instances) +
         " disagreed with one non-truth-interested player");
  return c.report();
}

// ---------------------------------------------------------------- 9

bool criterion_9() {
  Criterion c(9, "truth-interested update rules on a 1/100 grid");
  const analysis::EvidenceOutcome none{analysis::EvidenceTag::kNoSurvivingConfirmation, ""};
  const analysis::EvidenceOutcome refuted{analysis::EvidenceTag::kUnrebuttedRefutation, ""};
  for (int i = 0; i <= 100; ++i) {
    const Rational p = q(i, 100);
    c.expect(analysis::truth_interested_update(p, none) <= q(1, 2),
             "no surviving confirmation at " + to_string(p));
    c.expect(analysis::truth_interested_update(p, refuted) == 0,
             "unrebutted refutation at " + to_string(p));
  }
  return c.report();
}

// ---------------------------------------------------------------- 10

discourse::Edu unit(const std::string& id, const std::string& atom, PlayerId speaker) {
  discourse::Edu e;
  e.id = id;
  e.speaker = speaker;
  if (!atom.empty()) e.commitments.insert(discourse::Literal::parse(atom));
  return e;
}

// A chain of `length` units ending in a unit committed to `claim`.
discourse::History chain(const std::string& prefix, std::size_t length, const std::string& claim,
                         PlayerId speaker, discourse::RelationName rel) {
  discourse::History h;
  for (std::size_t i = 0; i < length; ++i) {
    const bool last = i + 1 == length;
    h.edus.push_back(unit(prefix + std::to_string(i), last ? claim : prefix + "_fact" +
                                                                        std::to_string(i),
                          speaker));
    if (i > 0) {
      h.relations.insert({rel, prefix + std::to_string(i - 1), prefix + std::to_string(i)});
    }
  }
  return h;
}

bool criterion_10() {
  Criterion c(10, "fully rebutted contradictory histories both lose");
  using game::AttackKind;
  const std::vector<AttackKind> kinds{AttackKind::kEvidence, AttackKind::kConsistency,
                                      AttackKind::kCoherence, AttackKind::kAdHominem,
                                      AttackKind::kGeneralSkeptical};
  const std::vector<discourse::RelationName> rels{discourse::RelationName::kResult,
                                                  discourse::RelationName::kElaboration,
                                                  discourse::RelationName::kExplanation};
  std::size_t instances = 0;
  for (std::size_t le = 1; le <= 3; ++le) {
    for (std::size_t la = 1; la <= 3; ++la) {
      for (const auto rel : rels) {
        const auto he = chain("e", le, "claim", 0, rel);
        const auto ha = chain("a", la, "~claim", 1, rel);
        for (std::size_t ne = 0; ne <= 3; ++ne) {
          for (std::size_t na = 0; na <= 3; ++na) {
            for (const bool dis : {false, true}) {
              TruthGameSpec script;
              script.disinterested = dis;
              for (std::size_t i = 0; i < ne; ++i) {
                game::Move m;
                m.id = "xe" + std::to_string(i);
                m.payload = m.id;
                m.player = 1;
                m.attack_kind = kinds[(i + le) % kinds.size()];
                m.attack_target = "e0";
                script.attacks_on_e.push_back(m);
                game::Move r;
                r.payload = "re" + std::to_string(i);
                script.rebuttals_e.emplace(m.id, r);
              }
              for (std::size_t i = 0; i < na; ++i) {
                game::Move m;
                m.id = "xa" + std::to_string(i);
                m.payload = m.id;
                m.player = 0;
                m.attack_kind = kinds[(i + la + 2) % kinds.size()];
                m.attack_target = "a0";
                script.attacks_on_a.push_back(m);
                game::Move r;
                r.payload = "ra" + std::to_string(i);
                r.player = 1;
                script.rebuttals_a.emplace(m.id, r);
              }
              const auto out = analysis::two_history_outcome(he, ha, script);
              ++instances;
              c.expect(!out.conflicts.empty(), "histories contradict");
              c.expect(out.verdict == analysis::TruthVerdict::kBothLose,
                       "verdict " + std::string(analysis::truth_verdict_name(out.verdict)) +
                           " with lengths " + std::to_string(le) + "," + std::to_string(la));
            }
          }
        }
      }
    }
  }
  c.note(std::to_string(instances) + " scripted instances");
  return c.report();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: megame_acceptance <path to megame CLI>\n";
    return 2;
  }
  const std::string cli = argv[1];
  bool ok = true;
  const std::vector<std::function<bool()>> criteria{
      criterion_1, criterion_2, criterion_3, criterion_4,
      [&] { return criterion_5(cli); },
      criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};
  for (const auto& run : criteria) {
    try {
      ok = run() && ok;
    } catch (const std::exception& e) {
      std::cout << "FAIL criterion raised: " << e.what() << std::endl;
      ok = false;
    }
  }
  return ok ? 0 : 1;
}
