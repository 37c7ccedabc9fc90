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

#include "megame/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "megame/error.hpp"

namespace megame {

const std::vector<std::pair<std::string, std::string>>& builtin_sources();

namespace {

using nlohmann::json;
using discourse::RelationInstance;

// Cursor into the document that remembers where it is for error messages.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

  bool has(const char* key) const { return j_.is_object() && j_.contains(key); }

  Node at(const char* key) const {
    expect_object();
    if (!j_.contains(key)) bad("missing key \"" + std::string(key) + "\"");
    return Node(j_.at(key), path_ + "." + key);
  }

  Node at(std::size_t i) const { return Node(j_.at(i), path_ + "[" + std::to_string(i) + "]"); }

  std::vector<Node> items() const {
    if (!j_.is_array()) bad("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < j_.size(); ++i) out.push_back(at(i));
    return out;
  }

  std::vector<std::pair<std::string, Node>> fields() const {
    expect_object();
    std::vector<std::pair<std::string, Node>> out;
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      out.emplace_back(it.key(), Node(it.value(), path_ + "." + it.key()));
    }
    return out;
  }

  std::string str() const {
    if (!j_.is_string()) bad("expected a string");
    return j_.get<std::string>();
  }

  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (const auto& n : items()) out.push_back(n.str());
    return out;
  }

  bool boolean() const {
    if (!j_.is_boolean()) bad("expected true or false");
    return j_.get<bool>();
  }

  long long integer() const {
    if (j_.is_number_float()) bad("floating-point value where an integer is required");
    if (!j_.is_number_integer()) bad("expected an integer");
    return j_.get<long long>();
  }

  std::size_t count() const {
    const long long v = integer();
    if (v < 0) bad("expected a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  PlayerId player() const {
    const long long v = integer();
    if (v != 0 && v != 1) bad("player must be 0 or 1");
    return static_cast<PlayerId>(v);
  }

  Rational rational() const {
    if (j_.is_number_float()) {
      bad("floating-point probability rejected; write {\"num\":N,\"den\":D}");
    }
    if (j_.is_number_integer()) return Rational(BigInt(j_.get<long long>()));
    if (!j_.is_object()) bad("expected a rational {\"num\":N,\"den\":D}");
    const long long num = at("num").integer();
    const long long den = has("den") ? at("den").integer() : 1;
    if (den == 0) bad("zero denominator");
    return make_rational(num, den);
  }

  void only_keys(std::initializer_list<const char*> allowed) const {
    expect_object();
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                  [&](const char* k) { return it.key() == k; });
      if (!ok) bad("unknown key \"" + it.key() + "\"");
    }
  }

  [[noreturn]] void bad(const std::string& what, ErrorKind kind = ErrorKind::kParse) const {
    fail(kind, path_ + ": " + what);
  }

 private:
  void expect_object() const {
    if (!j_.is_object()) bad("expected an object");
  }

  const json& j_;
  std::string path_;
};

json rational_json(const Rational& r) {
  json j = json::object();
  j["num"] = json::parse(numerator_of(r).str());
  j["den"] = json::parse(denominator_of(r).str());
  return j;
}

game::Move read_move(const Node& n, std::optional<PlayerId> player) {
  n.only_keys({"id", "payload", "player", "attack", "target", "answered_by"});
  game::Move m;
  m.payload = n.at("payload").str();
  if (n.has("id")) m.id = n.at("id").str();
  if (player) {
    m.player = *player;
    if (n.has("player") && n.at("player").player() != *player) {
      n.bad("move player differs from its turn", ErrorKind::kScript);
    }
  } else {
    m.player = n.at("player").player();
  }
  if (n.has("attack")) {
    auto kind = game::parse_attack_kind(n.at("attack").str());
    if (!kind) n.at("attack").bad("unknown attack kind");
    m.attack_kind = *kind;
  }
  if (n.has("target")) m.attack_target = n.at("target").str();
  if (n.has("answered_by")) m.answered_by = n.at("answered_by").str();
  if (m.attack_kind != game::AttackKind::kNone && !m.attack_target) {
    n.bad("attack without a target", ErrorKind::kScript);
  }
  return m;
}

json move_json(const game::Move& m, bool with_player) {
  json j = json::object();
  if (!m.id.empty()) j["id"] = m.id;
  j["payload"] = m.payload;
  if (with_player) j["player"] = m.player;
  if (m.attack_kind != game::AttackKind::kNone) {
    j["attack"] = std::string(game::attack_kind_name(m.attack_kind));
  }
  if (m.attack_target) j["target"] = *m.attack_target;
  if (m.answered_by) j["answered_by"] = *m.answered_by;
  return j;
}

game::Turn read_turn(const Node& n) {
  n.only_keys({"player", "moves"});
  game::Turn t;
  t.player = n.at("player").player();
  for (const auto& m : n.at("moves").items()) t.moves.push_back(read_move(m, t.player));
  if (t.moves.empty()) n.bad("empty turn", ErrorKind::kScript);
  return t;
}

json turn_json(const game::Turn& t) {
  json moves = json::array();
  for (const auto& m : t.moves) moves.push_back(move_json(m, false));
  return json{{"player", t.player}, {"moves", moves}};
}

game::Predicate read_predicate(const Node& n) {
  using game::Predicate;
  const std::string op = n.at("op").str();
  auto args = [&] {
    std::vector<Predicate> out;
    for (const auto& a : n.at("args").items()) out.push_back(read_predicate(a));
    return out;
  };
  auto payload = [&] { return n.has("payload") ? n.at("payload").str() : std::string(); };
  if (op == "const") {
    n.only_keys({"op", "value"});
    return Predicate::constant(n.at("value").boolean());
  }
  if (op == "last_speaker") {
    n.only_keys({"op", "player"});
    return Predicate::last_speaker(n.at("player").player());
  }
  if (op == "says") {
    n.only_keys({"op", "player", "payload"});
    return Predicate::says(n.at("player").player(), n.at("payload").str());
  }
  if (op == "count_at_least") {
    n.only_keys({"op", "player", "payload", "count"});
    return Predicate::count_at_least(n.at("player").player(), payload(),
                                     n.at("count").count());
  }
  if (op == "not") {
    n.only_keys({"op", "args"});
    auto a = args();
    if (a.size() != 1) n.bad("\"not\" takes exactly one argument");
    return Predicate::negation(std::move(a.front()));
  }
  if (op == "and") {
    n.only_keys({"op", "args"});
    return Predicate::all_of(args());
  }
  if (op == "or") {
    n.only_keys({"op", "args"});
    return Predicate::any_of(args());
  }
  n.bad("unknown predicate op \"" + op + "\"");
}

json predicate_json(const game::Predicate& p) {
  using Op = game::Predicate::Op;
  json args = json::array();
  for (const auto& a : p.args) args.push_back(predicate_json(a));
  switch (p.op) {
    case Op::kConst: return {{"op", "const"}, {"value", p.value}};
    case Op::kLastSpeaker: return {{"op", "last_speaker"}, {"player", p.player}};
    case Op::kSays: return {{"op", "says"}, {"player", p.player}, {"payload", p.payload}};
    case Op::kCountAtLeast:
      return {{"op", "count_at_least"}, {"player", p.player},
              {"payload", p.payload}, {"count", p.count}};
    case Op::kNot: return {{"op", "not"}, {"args", args}};
    case Op::kAnd: return {{"op", "and"}, {"args", args}};
    case Op::kOr: return {{"op", "or"}, {"args", args}};
  }
  return {};
}

game::WinCondition read_condition(const Node& n) {
  n.only_keys({"predicate", "limit_ratio", "discounted", "posterior"});
  if (n.raw().size() != 1) n.bad("a winning condition has exactly one kind");
  game::WinCondition c;
  if (n.has("predicate")) {
    c.kind = game::WinCondition::Kind::kPredicate;
    c.predicate = read_predicate(n.at("predicate"));
  } else if (n.has("limit_ratio")) {
    const Node s = n.at("limit_ratio");
    s.only_keys({"attacker", "window", "epsilon", "horizon", "disinterested"});
    c.kind = game::WinCondition::Kind::kLimitRatio;
    c.limit_ratio.attacker = s.at("attacker").player();
    c.limit_ratio.window = s.at("window").count();
    c.limit_ratio.epsilon = s.at("epsilon").rational();
    c.limit_ratio.horizon = s.at("horizon").count();
    if (s.has("disinterested")) c.limit_ratio.disinterested = s.at("disinterested").boolean();
    if (c.limit_ratio.window == 0 || c.limit_ratio.horizon == 0 ||
        c.limit_ratio.window > c.limit_ratio.horizon) {
      s.bad("need 0 < window <= horizon", ErrorKind::kInvalidArgument);
    }
  } else if (n.has("discounted")) {
    const Node s = n.at("discounted");
    s.only_keys({"gamma", "threshold", "scores"});
    c.kind = game::WinCondition::Kind::kDiscounted;
    c.discounted.gamma = s.at("gamma").rational();
    c.discounted.threshold = s.at("threshold").rational();
    if (s.has("scores")) {
      for (const auto& [k, v] : s.at("scores").fields()) c.discounted.scores[k] = v.rational();
    }
    if (c.discounted.gamma < 0 || c.discounted.gamma >= 1) {
      s.at("gamma").bad("gamma must lie in [0,1)", ErrorKind::kInvalidArgument);
    }
  } else {
    const Node s = n.at("posterior");
    s.only_keys({"jury_type", "player_type", "threshold"});
    c.kind = game::WinCondition::Kind::kPosterior;
    c.posterior.jury_type = s.at("jury_type").str();
    c.posterior.player_type = s.at("player_type").str();
    c.posterior.threshold = s.at("threshold").rational();
  }
  return c;
}

json condition_json(const game::WinCondition& c) {
  using Kind = game::WinCondition::Kind;
  switch (c.kind) {
    case Kind::kPredicate:
      return {{"predicate", predicate_json(c.predicate)}};
    case Kind::kLimitRatio:
      return {{"limit_ratio",
               {{"attacker", c.limit_ratio.attacker},
                {"window", c.limit_ratio.window},
                {"epsilon", rational_json(c.limit_ratio.epsilon)},
                {"horizon", c.limit_ratio.horizon},
                {"disinterested", c.limit_ratio.disinterested}}}};
    case Kind::kDiscounted: {
      json scores = json::object();
      for (const auto& [k, v] : c.discounted.scores) scores[k] = rational_json(v);
      return {{"discounted",
               {{"gamma", rational_json(c.discounted.gamma)},
                {"threshold", rational_json(c.discounted.threshold)},
                {"scores", scores}}}};
    }
    case Kind::kPosterior:
      return {{"posterior",
               {{"jury_type", c.posterior.jury_type},
                {"player_type", c.posterior.player_type},
                {"threshold", rational_json(c.posterior.threshold)}}}};
  }
  return {};
}

void check_predicate_players(const game::Predicate& p, const Node& where) {
  if (p.op == game::Predicate::Op::kNot && p.args.size() != 1) {
    where.bad("\"not\" takes exactly one argument");
  }
  for (const auto& a : p.args) check_predicate_players(a, where);
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

class Loader {
 public:
  explicit Loader(const json& doc) : root_(doc, "$") {}

  GameSpec load() {
    root_.only_keys({"name", "vocabulary", "units", "cdus", "relations", "ulfs", "types",
                     "strategies", "priors", "kernels", "script", "jury",
                     "designated_player", "truth_game", "agreement"});
    if (root_.has("name")) spec_.name = root_.at("name").str();
    if (root_.has("vocabulary")) spec_.vocabulary = root_.at("vocabulary").strings();
    read_units();
    read_relations();
    read_ulfs();
    read_types();
    read_strategies();
    read_priors();
    read_kernels();
    read_script();
    read_jury();
    spec_.designated_player =
        root_.has("designated_player") ? root_.at("designated_player").player() : 1;
    read_truth_game();
    read_agreement();
    return std::move(spec_);
  }

 private:
  void read_units() {
    std::set<UnitId> ids;
    for (const auto& n : root_.at("units").items()) {
      n.only_keys({"id", "speaker", "label", "commitments"});
      discourse::Edu e;
      e.id = n.at("id").str();
      e.speaker = n.has("speaker") ? n.at("speaker").player() : 0;
      if (n.has("label")) e.label = n.at("label").str();
      if (n.has("commitments")) {
        for (const auto& c : n.at("commitments").strings()) {
          const auto lit = discourse::Literal::parse(c);
          if (e.commitments.count(lit.complement())) {
            n.bad("commitments contain " + lit.atom + " and its negation",
                  ErrorKind::kInvalidArgument);
          }
          e.commitments.insert(lit);
        }
      }
      if (!ids.insert(e.id).second) n.bad("duplicate unit id " + e.id, ErrorKind::kReference);
      spec_.units.edus.emplace(e.id, std::move(e));
    }
    if (root_.has("cdus")) {
      for (const auto& n : root_.at("cdus").items()) {
        n.only_keys({"id", "members"});
        discourse::Cdu c;
        c.id = n.at("id").str();
        c.members = n.at("members").strings();
        if (c.members.empty()) n.bad("empty CDU " + c.id, ErrorKind::kInvalidArgument);
        if (!ids.insert(c.id).second) n.bad("duplicate unit id " + c.id, ErrorKind::kReference);
        spec_.units.cdus.emplace(c.id, std::move(c));
      }
    }
    for (const auto& [id, c] : spec_.units.cdus) {
      for (const auto& m : c.members) {
        if (!ids.count(m)) fail(ErrorKind::kReference, "CDU " + id + " names unknown unit " + m);
      }
    }
  }

  void read_relations() {
    if (!root_.has("relations")) return;
    for (const auto& n : root_.at("relations").items()) {
      n.only_keys({"id", "rel", "source", "target"});
      const std::string id = n.at("id").str();
      const auto name = discourse::parse_relation_name(n.at("rel").str());
      if (!name) n.at("rel").bad("unknown relation name");
      RelationInstance r{*name, n.at("source").str(), n.at("target").str()};
      for (const auto* end : {&r.source, &r.target}) {
        if (!spec_.units.contains(*end)) n.bad("unknown unit " + *end, ErrorKind::kReference);
      }
      if (r.source == r.target) n.bad("relation from a unit to itself", ErrorKind::kInvalidArgument);
      if (!relations_.emplace(id, r).second) {
        n.bad("duplicate relation id " + id, ErrorKind::kReference);
      }
    }
  }

  RelationInstance relation(const Node& n) const {
    const std::string id = n.str();
    auto it = relations_.find(id);
    if (it == relations_.end()) n.bad("unknown relation " + id, ErrorKind::kReference);
    return it->second;
  }

  void read_ulfs() {
    for (const auto& n : root_.at("ulfs").items()) {
      n.only_keys({"id", "order", "cdus", "fixed", "slots", "grammar"});
      discourse::UnderspecifiedForm u;
      u.id = n.at("id").str();
      u.order = n.at("order").strings();
      if (n.has("cdus")) u.cdus = n.at("cdus").strings();
      if (n.has("fixed")) {
        for (const auto& r : n.at("fixed").items()) u.fixed_relations.insert(relation(r));
      }
      if (n.has("slots")) {
        for (const auto& s : n.at("slots").items()) {
          std::vector<RelationInstance> slot;
          for (const auto& r : s.items()) slot.push_back(relation(r));
          u.slots.push_back(std::move(slot));
        }
      }
      const auto problems = discourse::check_ulf(u, spec_.units);
      if (!problems.empty()) n.bad(join(problems, "; "), ErrorKind::kReference);
      const std::size_t count = discourse::completions(u, spec_.units).histories.size();
      if (n.has("grammar")) {
        const std::size_t g = n.at("grammar").count();
        if (g >= count) n.at("grammar").bad("grammar completion out of range", ErrorKind::kReference);
        spec_.grammar[u.id] = g;
      }
      spec_.type_space.completion_counts[u.id] = count;
      if (spec_.ulfs.count(u.id)) n.bad("duplicate ULF id " + u.id, ErrorKind::kReference);
      spec_.ulfs.emplace(u.id, std::move(u));
    }
  }

  void read_types() {
    const Node n = root_.at("types");
    n.only_keys({"players", "jury"});
    const auto players = n.at("players").items();
    if (players.size() != 2) n.at("players").bad("expected two player type lists");
    for (std::size_t i = 0; i < 2; ++i) {
      const auto ts = players[i].strings();
      if (ts.empty()) players[i].bad("no types");
      if (std::set<std::string>(ts.begin(), ts.end()).size() != ts.size()) {
        players[i].bad("duplicate type", ErrorKind::kReference);
      }
      spec_.type_space.player_types[i] = ts;
    }
    spec_.type_space.jury_types = n.at("jury").strings();
    if (spec_.type_space.jury_types.empty()) n.at("jury").bad("no jury types");
  }

  bool known_payload(const std::string& p) const {
    return spec_.units.contains(p) || contains(spec_.vocabulary, p);
  }

  void read_strategies() {
    if (!root_.has("strategies")) return;
    std::set<std::string> ids;
    for (const auto& n : root_.at("strategies").items()) {
      n.only_keys({"id", "owner", "moves"});
      epistemic::StrategyTable t;
      t.id = n.at("id").str();
      t.owner = n.at("owner").player();
      t.moves = n.at("moves").strings();
      for (const auto& m : t.moves) {
        if (!known_payload(m)) n.bad("unknown payload " + m, ErrorKind::kReference);
      }
      if (!ids.insert(t.id).second) n.bad("duplicate strategy id " + t.id, ErrorKind::kReference);
      spec_.type_space.strategies.push_back(std::move(t));
    }
  }

  void check_type(const Node& where, PlayerId i, const std::string& t) const {
    if (!contains(spec_.type_space.player_types[static_cast<std::size_t>(i)], t)) {
      where.bad("unknown type " + t + " for player " + std::to_string(i),
                ErrorKind::kReference);
    }
  }

  void check_jury_type(const Node& where, const std::string& jt) const {
    if (!contains(spec_.type_space.jury_types, jt)) {
      where.bad("unknown jury type " + jt, ErrorKind::kReference);
    }
  }

  void read_priors() {
    const Node priors = root_.at("priors");
    for (const auto& [jt, rows] : priors.fields()) {
      check_jury_type(rows, jt);
      Distribution<epistemic::Profile>::Weights w;
      for (const auto& row : rows.items()) {
        row.only_keys({"profile", "p"});
        const auto f = row.at("profile").strings();
        if (f.size() != 4) row.at("profile").bad("expected [type0, strategy0, type1, strategy1]");
        const epistemic::Profile p{f[0], f[1], f[2], f[3]};
        for (PlayerId i : {0, 1}) {
          check_type(row, i, p.type(i));
          const auto& ss = spec_.type_space.strategies;
          auto it = std::find_if(ss.begin(), ss.end(),
                                 [&](const auto& s) { return s.id == p.strategy(i); });
          if (it == ss.end()) row.bad("unknown strategy " + p.strategy(i), ErrorKind::kReference);
          if (it->owner != i) {
            row.bad("strategy " + p.strategy(i) + " belongs to player " +
                        std::to_string(it->owner),
                    ErrorKind::kReference);
          }
        }
        if (w.count(p)) row.bad("duplicate profile", ErrorKind::kInvalidArgument);
        w[p] = row.at("p").rational();
      }
      spec_.type_space.priors.emplace(
          jt, Distribution<epistemic::Profile>::from_weights(w, "prior for " + jt));
    }
    for (const auto& jt : spec_.type_space.jury_types) {
      if (!spec_.type_space.priors.count(jt)) priors.bad("no prior for jury type " + jt, ErrorKind::kReference);
    }
  }

  void read_kernels() {
    if (!root_.has("kernels")) return;
    for (const auto& n : root_.at("kernels").items()) {
      n.only_keys({"jury", "types", "ulf", "dist"});
      epistemic::KernelKey key;
      key.jury_type = n.at("jury").str();
      check_jury_type(n, key.jury_type);
      const auto types = n.at("types").strings();
      if (types.size() != 2) n.at("types").bad("expected [type0, type1]");
      check_type(n, 0, types[0]);
      check_type(n, 1, types[1]);
      key.types = {types[0], types[1]};
      key.ulf = n.at("ulf").str();
      if (!spec_.ulfs.count(key.ulf)) n.bad("unknown ULF " + key.ulf, ErrorKind::kReference);
      const std::size_t count = spec_.type_space.completion_counts.at(key.ulf);
      Distribution<std::size_t>::Weights w;
      for (const auto& row : n.at("dist").items()) {
        row.only_keys({"completion", "p"});
        const std::size_t h = row.at("completion").count();
        if (h >= count) {
          row.bad("completion " + std::to_string(h) + " out of range (" +
                      std::to_string(count) + " completions)",
                  ErrorKind::kReference);
        }
        if (w.count(h)) row.bad("duplicate completion", ErrorKind::kInvalidArgument);
        w[h] = row.at("p").rational();
      }
      auto dist = Distribution<std::size_t>::from_weights(
          w, "kernel " + key.jury_type + "/" + types[0] + "/" + types[1] + "/" + key.ulf);
      if (!spec_.type_space.kernels.emplace(key, std::move(dist)).second) {
        n.bad("duplicate kernel entry", ErrorKind::kInvalidArgument);
      }
    }
  }

  void read_script() {
    if (!root_.has("script")) return;
    const Node n = root_.at("script");
    n.only_keys({"prefix", "rounds"});
    game::Play play;
    auto legal = [&](const Node& where, const game::Turn& t) {
      for (const auto& m : t.moves) {
        if (m.attack_kind == game::AttackKind::kNone && !known_payload(m.payload)) {
          where.bad("unknown payload " + m.payload, ErrorKind::kReference);
        }
      }
      try {
        play = game::extend(play, t);
      } catch (const Error& e) {
        where.bad(e.what(), ErrorKind::kScript);
      }
    };
    if (n.has("prefix")) {
      for (const auto& t : n.at("prefix").items()) {
        spec_.script.prefix.push_back(read_turn(t));
        legal(t, spec_.script.prefix.back());
      }
    }
    if (n.has("rounds")) {
      for (const auto& r : n.at("rounds").items()) {
        std::vector<game::Turn> round;
        for (const auto& t : r.items()) {
          round.push_back(read_turn(t));
          legal(t, round.back());
        }
        if (round.empty()) r.bad("empty round", ErrorKind::kScript);
        spec_.script.rounds.push_back(std::move(round));
      }
    }
  }

  void check_condition(const Node& where, const game::WinCondition& c) const {
    check_predicate_players(c.predicate, where);
    if (c.kind == game::WinCondition::Kind::kPosterior) {
      check_jury_type(where, c.posterior.jury_type);
      if (!spec_.type_space.owner_of_type(c.posterior.player_type)) {
        where.bad("unknown player type " + c.posterior.player_type, ErrorKind::kReference);
      }
    }
  }

  void read_jury() {
    if (!root_.has("jury")) return;
    const Node n = root_.at("jury");
    n.only_keys({"win", "scores", "bijection"});
    if (n.has("win")) {
      for (const auto& [jt, w] : n.at("win").fields()) {
        check_jury_type(w, jt);
        w.only_keys({"win0", "win1", "win_lose"});
        game::Jury j;
        j.win0 = read_condition(w.at("win0"));
        check_condition(w, j.win0);
        j.win_lose = w.has("win_lose") ? w.at("win_lose").boolean() : !w.has("win1");
        if (w.has("win1")) {
          j.win1 = read_condition(w.at("win1"));
          check_condition(w, j.win1);
        } else if (!j.win_lose) {
          w.bad("win1 is required unless the game is win-lose");
        }
        if (j.win_lose) j.win1 = game::WinCondition{};
        spec_.juries.emplace(jt, std::move(j));
      }
    }
    if (n.has("scores")) {
      for (const auto& s : n.at("scores").items()) {
        s.only_keys({"jury", "ulf", "completion", "score"});
        ScoreKey key{s.at("jury").str(), s.at("ulf").str(), s.at("completion").count()};
        check_jury_type(s, key.jury_type);
        if (!spec_.ulfs.count(key.ulf)) s.bad("unknown ULF " + key.ulf, ErrorKind::kReference);
        if (key.completion >= spec_.type_space.completion_counts.at(key.ulf)) {
          s.bad("completion out of range", ErrorKind::kReference);
        }
        if (!spec_.scores.emplace(key, s.at("score").rational()).second) {
          s.bad("duplicate score", ErrorKind::kInvalidArgument);
        }
      }
    }
    if (n.has("bijection")) {
      for (const auto& [from, to] : n.at("bijection").fields()) {
        check_type(to, 0, from);
        check_type(to, 1, to.str());
        spec_.bijection[from] = to.str();
      }
    }
  }

  std::vector<game::Move> read_attacks(const Node& n, std::set<std::string>& ids) const {
    std::vector<game::Move> out;
    for (const auto& a : n.items()) {
      auto m = read_move(a, std::nullopt);
      if (m.attack_kind == game::AttackKind::kNone) a.bad("not an attack");
      if (m.id.empty()) a.bad("attack without an id");
      if (!ids.insert(m.id).second) a.bad("duplicate attack id " + m.id, ErrorKind::kReference);
      out.push_back(std::move(m));
    }
    return out;
  }

  std::map<std::string, game::Move> read_rebuttals(const Node& n,
                                                   const std::vector<game::Move>& attacks) const {
    std::map<std::string, game::Move> out;
    for (const auto& r : n.items()) {
      r.only_keys({"attack", "move"});
      const std::string id = r.at("attack").str();
      const bool known = std::any_of(attacks.begin(), attacks.end(),
                                     [&](const game::Move& m) { return m.id == id; });
      if (!known) r.bad("rebuttal of unknown attack " + id, ErrorKind::kReference);
      if (!out.emplace(id, read_move(r.at("move"), std::nullopt)).second) {
        r.bad("duplicate rebuttal", ErrorKind::kInvalidArgument);
      }
    }
    return out;
  }

  void read_truth_game() {
    if (!root_.has("truth_game")) return;
    const Node n = root_.at("truth_game");
    n.only_keys({"e", "a", "attacks_on_e", "attacks_on_a", "rebuttals_e", "rebuttals_a",
                 "disinterested"});
    TruthGameSpec tg;
    tg.ulf_e = n.at("e").str();
    tg.ulf_a = n.at("a").str();
    for (const auto* u : {&tg.ulf_e, &tg.ulf_a}) {
      if (!spec_.ulfs.count(*u)) n.bad("unknown ULF " + *u, ErrorKind::kReference);
      if (spec_.type_space.completion_counts.at(*u) != 1) {
        n.bad("ULF " + *u + " must have exactly one completion", ErrorKind::kInvalidArgument);
      }
    }
    std::set<std::string> ids;
    if (n.has("attacks_on_e")) tg.attacks_on_e = read_attacks(n.at("attacks_on_e"), ids);
    if (n.has("attacks_on_a")) tg.attacks_on_a = read_attacks(n.at("attacks_on_a"), ids);
    if (n.has("rebuttals_e")) tg.rebuttals_e = read_rebuttals(n.at("rebuttals_e"), tg.attacks_on_e);
    if (n.has("rebuttals_a")) tg.rebuttals_a = read_rebuttals(n.at("rebuttals_a"), tg.attacks_on_a);
    if (n.has("disinterested")) tg.disinterested = n.at("disinterested").boolean();
    spec_.truth_game = std::move(tg);
  }

  void read_agreement() {
    if (!root_.has("agreement")) return;
    const Node n = root_.at("agreement");
    n.only_keys({"facts", "grounds", "truth_interested"});
    AgreementSpec a;
    a.facts = n.at("facts").strings();
    if (a.facts.empty()) n.at("facts").bad("no facts");
    const auto grounds = n.at("grounds").items();
    if (grounds.size() != 2) n.at("grounds").bad("expected two ground lists");
    for (std::size_t i = 0; i < 2; ++i) {
      for (const auto& g : grounds[i].strings()) {
        if (g == "sound") {
          a.grounds[i].push_back(Ground::kSound);
        } else if (g == "weak") {
          a.grounds[i].push_back(Ground::kWeak);
        } else {
          grounds[i].bad("ground must be \"sound\" or \"weak\"");
        }
      }
      if (a.grounds[i].size() != a.facts.size()) grounds[i].bad("one ground per fact required");
    }
    for (std::size_t f = 0; f < a.facts.size(); ++f) {
      if (a.grounds[0][f] == Ground::kSound && a.grounds[1][f] == Ground::kSound) {
        n.bad("both players hold sound grounds on " + a.facts[f], ErrorKind::kInvalidArgument);
      }
    }
    if (n.has("truth_interested")) {
      const auto ti = n.at("truth_interested").items();
      if (ti.size() != 2) n.at("truth_interested").bad("expected two booleans");
      a.truth_interested = {ti[0].boolean(), ti[1].boolean()};
    }
    spec_.agreement = std::move(a);
  }

  Node root_;
  GameSpec spec_;
  std::map<std::string, RelationInstance> relations_;
};

}  // namespace

const discourse::UnderspecifiedForm& GameSpec::ulf(const std::string& id) const {
  auto it = ulfs.find(id);
  if (it == ulfs.end()) fail(ErrorKind::kReference, "unknown ULF id " + id);
  return it->second;
}

discourse::Completions GameSpec::completions(const std::string& ulf_id) const {
  return discourse::completions(ulf(ulf_id), units);
}

discourse::History GameSpec::history(const std::string& ulf_id) const {
  auto c = completions(ulf_id);
  if (c.histories.size() != 1) {
    fail(ErrorKind::kInvalidArgument,
         "ULF " + ulf_id + " has " + std::to_string(c.histories.size()) +
             " completions, expected one");
  }
  return c.histories.front();
}

const game::Jury& GameSpec::jury(const std::string& jury_type) const {
  auto it = juries.find(jury_type);
  if (it == juries.end()) {
    fail(ErrorKind::kReference, "no winning condition for jury type " + jury_type);
  }
  return it->second;
}

game::Play GameSpec::prefix_play() const {
  game::Play p;
  for (const auto& t : script.prefix) p = game::extend(p, t);
  return p;
}

game::Play GameSpec::scripted_play(std::size_t n) const {
  if (n > script.rounds.size()) {
    fail(ErrorKind::kScript, "script exhausted: " + std::to_string(n) + " rounds requested");
  }
  game::Play p = prefix_play();
  for (std::size_t r = 0; r < n; ++r) {
    for (const auto& t : script.rounds[r]) p = game::extend(p, t);
  }
  return p;
}

GameSpec load_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, json_text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (json_text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail(ErrorKind::kParse, "parse error at line " + std::to_string(line) + ", column " +
                                std::to_string(column) + ": " + e.what());
  }
  return Loader(doc).load();
}

GameSpec load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string serialize(const GameSpec& spec) {
  json doc = json::object();
  doc["name"] = spec.name;
  doc["vocabulary"] = spec.vocabulary;

  json units = json::array();
  for (const auto& [id, e] : spec.units.edus) {
    json c = json::array();
    for (const auto& l : e.commitments) c.push_back(l.str());
    units.push_back({{"id", id}, {"speaker", e.speaker}, {"label", e.label}, {"commitments", c}});
  }
  doc["units"] = units;
  json cdus = json::array();
  for (const auto& [id, c] : spec.units.cdus) cdus.push_back({{"id", id}, {"members", c.members}});
  doc["cdus"] = cdus;

  // Relation ids are assigned in order of first use.
  std::map<RelationInstance, std::string> rel_ids;
  json relations = json::array();
  auto rel_id = [&](const RelationInstance& r) {
    auto it = rel_ids.find(r);
    if (it != rel_ids.end()) return it->second;
    const std::string id = "r" + std::to_string(rel_ids.size());
    rel_ids.emplace(r, id);
    relations.push_back({{"id", id},
                         {"rel", std::string(discourse::relation_name(r.relation))},
                         {"source", r.source},
                         {"target", r.target}});
    return id;
  };
  json ulfs = json::array();
  for (const auto& [id, u] : spec.ulfs) {
    json fixed = json::array();
    for (const auto& r : u.fixed_relations) fixed.push_back(rel_id(r));
    json slots = json::array();
    for (const auto& s : u.slots) {
      json slot = json::array();
      for (const auto& r : s) slot.push_back(rel_id(r));
      slots.push_back(slot);
    }
    json j = {{"id", id}, {"order", u.order}, {"cdus", u.cdus}, {"fixed", fixed}, {"slots", slots}};
    if (auto g = spec.grammar.find(id); g != spec.grammar.end()) j["grammar"] = g->second;
    ulfs.push_back(j);
  }
  doc["relations"] = relations;
  doc["ulfs"] = ulfs;

  const auto& ts = spec.type_space;
  json players = json::array();
  for (const auto& types : ts.player_types) players.push_back(types);
  doc["types"] = {{"players", players}, {"jury", ts.jury_types}};
  json strategies = json::array();
  for (const auto& s : ts.strategies) {
    strategies.push_back({{"id", s.id}, {"owner", s.owner}, {"moves", s.moves}});
  }
  doc["strategies"] = strategies;
  json priors = json::object();
  for (const auto& [jt, d] : ts.priors) {
    json rows = json::array();
    for (const auto& [p, w] : d.weights()) {
      rows.push_back({{"profile", {p.type0, p.strategy0, p.type1, p.strategy1}},
                      {"p", rational_json(w)}});
    }
    priors[jt] = rows;
  }
  doc["priors"] = priors;
  json kernels = json::array();
  for (const auto& [key, d] : ts.kernels) {
    json dist = json::array();
    for (const auto& [h, w] : d.weights()) dist.push_back({{"completion", h}, {"p", rational_json(w)}});
    kernels.push_back({{"jury", key.jury_type},
                       {"types", {key.types.first, key.types.second}},
                       {"ulf", key.ulf},
                       {"dist", dist}});
  }
  doc["kernels"] = kernels;

  json prefix = json::array();
  for (const auto& t : spec.script.prefix) prefix.push_back(turn_json(t));
  json rounds = json::array();
  for (const auto& r : spec.script.rounds) {
    json round = json::array();
    for (const auto& t : r) round.push_back(turn_json(t));
    rounds.push_back(round);
  }
  doc["script"] = {{"prefix", prefix}, {"rounds", rounds}};

  json win = json::object();
  for (const auto& [jt, j] : spec.juries) {
    json w = {{"win0", condition_json(j.win0)}, {"win_lose", j.win_lose}};
    if (!j.win_lose) w["win1"] = condition_json(j.win1);
    win[jt] = w;
  }
  json scores = json::array();
  for (const auto& [key, v] : spec.scores) {
    scores.push_back({{"jury", key.jury_type},
                      {"ulf", key.ulf},
                      {"completion", key.completion},
                      {"score", rational_json(v)}});
  }
  json bijection = json::object();
  for (const auto& [a, b] : spec.bijection) bijection[a] = b;
  doc["jury"] = {{"win", win}, {"scores", scores}, {"bijection", bijection}};
  doc["designated_player"] = spec.designated_player;

  if (spec.truth_game) {
    const auto& tg = *spec.truth_game;
    auto attacks = [](const std::vector<game::Move>& ms) {
      json a = json::array();
      for (const auto& m : ms) a.push_back(move_json(m, true));
      return a;
    };
    auto rebuttals = [](const std::map<std::string, game::Move>& rs) {
      json a = json::array();
      for (const auto& [id, m] : rs) a.push_back({{"attack", id}, {"move", move_json(m, true)}});
      return a;
    };
    doc["truth_game"] = {{"e", tg.ulf_e},
                         {"a", tg.ulf_a},
                         {"attacks_on_e", attacks(tg.attacks_on_e)},
                         {"attacks_on_a", attacks(tg.attacks_on_a)},
                         {"rebuttals_e", rebuttals(tg.rebuttals_e)},
                         {"rebuttals_a", rebuttals(tg.rebuttals_a)},
                         {"disinterested", tg.disinterested}};
  }
  if (spec.agreement) {
    const auto& a = *spec.agreement;
    json grounds = json::array();
    for (const auto& gs : a.grounds) {
      json row = json::array();
      for (const auto g : gs) row.push_back(g == Ground::kSound ? "sound" : "weak");
      grounds.push_back(row);
    }
    doc["agreement"] = {{"facts", a.facts},
                        {"grounds", grounds},
                        {"truth_interested", {a.truth_interested[0], a.truth_interested[1]}}};
  }
  return doc.dump(2) + "\n";
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, _] : builtin_sources()) out.push_back(name);
    std::sort(out.begin(), out.end());
    return out;
  }();
  return names;
}

const std::string& builtin_source(const std::string& name) {
  for (const auto& [n, text] : builtin_sources()) {
    if (n == name) return text;
  }
  fail(ErrorKind::kUnknownName,
       "unknown scenario \"" + name + "\"; valid names: " + join(builtin_names(), ", "));
}

GameSpec builtin(const std::string& name) { return load_scenario(builtin_source(name)); }

GameSpec resolve_scenario(const std::string& path_or_name) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(path_or_name, ec)) {
    return load_scenario_file(path_or_name);
  }
  const auto& names = builtin_names();
  if (std::find(names.begin(), names.end(), path_or_name) != names.end()) {
    return builtin(path_or_name);
  }
  fail(ErrorKind::kIo, "no such scenario file or builtin: " + path_or_name +
                           " (builtins: " + join(names, ", ") + ")");
}

}  // namespace megame
