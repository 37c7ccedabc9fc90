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

#include "megame/report.hpp"

#include "megame/analysis.hpp"
#include "megame/epistemic.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace megame::report {
namespace {

using Json = nlohmann::ordered_json;

Json rational(const Rational& r) {
  return Json{{"exact", to_string(r)}, {"float", to_double(r)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json header(const GameSpec& spec, const std::string& command) {
  return Json{{"command", command}, {"scenario", spec.name}};
}

void require_jury_type(const GameSpec& spec, const std::string& jt) {
  const auto& types = spec.type_space.jury_types;
  if (std::find(types.begin(), types.end(), jt) == types.end()) {
    fail(ErrorKind::kReference, "unknown jury type " + jt);
  }
}

std::vector<std::string> select_jury_types(const GameSpec& spec,
                                           const std::optional<std::string>& jt) {
  if (jt) {
    require_jury_type(spec, *jt);
    return {*jt};
  }
  return spec.type_space.jury_types;
}

std::vector<std::string> select_ulfs(const GameSpec& spec, const std::optional<std::string>& ulf) {
  if (ulf) {
    spec.ulf(*ulf);
    return {*ulf};
  }
  std::vector<std::string> out;
  for (const auto& [id, _] : spec.ulfs) out.push_back(id);
  return out;
}

Json relations_json(const discourse::History& h) {
  Json out = Json::array();
  for (const auto& r : h.relations) out.push_back(r.str());
  return out;
}

Json violations_json(const discourse::CoherenceReport& report) {
  Json out = Json::array();
  for (const auto& v : report) {
    out.push_back({{"kind", std::string(discourse::violation_name(v.kind))}, {"detail", v.detail}});
  }
  return out;
}

Json beliefs_json(const std::array<std::vector<Rational>, 2>& beliefs) {
  Json out = Json::array();
  for (const auto& row : beliefs) {
    Json r = Json::array();
    for (const auto& p : row) r.push_back(to_string(p));
    out.push_back(r);
  }
  return out;
}

}  // namespace

std::string run(const GameSpec& spec, const std::optional<std::string>& jury_type,
                std::optional<std::size_t> rounds, TrajectoryFormat format) {
  std::vector<epistemic::BeliefTrajectory> ts;
  const std::size_t n = rounds.value_or(spec.script.rounds.size());
  for (const auto& jt : select_jury_types(spec, jury_type)) {
    ts.push_back(epistemic::run_rounds(spec, jt, n));
  }
  return format == TrajectoryFormat::kCsv ? epistemic::trajectory_csv(ts)
                                          : epistemic::trajectory_jsonl(ts);
}

Outcome check_disinterested(const GameSpec& spec, const std::optional<std::string>& jury_type,
                            std::size_t max_length) {
  std::vector<std::string> types;
  if (jury_type) {
    require_jury_type(spec, *jury_type);
    types.push_back(*jury_type);
  } else {
    for (const auto& jt : spec.type_space.jury_types) {
      if (spec.juries.count(jt)) types.push_back(jt);
    }
    if (types.empty()) fail(ErrorKind::kInvalidArgument, "scenario declares no winning conditions");
  }
  Json j = header(spec, "check disinterested");
  Json results = Json::array();
  bool positive = true;
  for (const auto& jt : types) {
    const auto r = analysis::is_disinterested(spec, jt, max_length);
    positive = positive && r.necessary_conditions_met;
    results.push_back(
        {{"jury_type", jt},
         {"counterexample", r.counterexample ? Json(r.counterexample->str()) : Json(nullptr)},
         {"symmetry", std::string(analysis::symmetry_name(r.symmetry))},
         {"necessary_conditions_met", r.necessary_conditions_met}});
  }
  j["max_length"] = max_length;
  j["results"] = results;
  j["positive"] = positive;
  return {dump(j), positive};
}

Outcome check_dogwhistle(const GameSpec& spec, const std::optional<std::string>& jury_type,
                         const std::optional<std::string>& ulf,
                         std::optional<std::size_t> grammar) {
  Json j = header(spec, "check dogwhistle");
  Json results = Json::array();
  bool found = false;
  for (const auto& u : select_ulfs(spec, ulf)) {
    std::size_t g = 0;
    if (grammar) {
      g = *grammar;
    } else if (auto it = spec.grammar.find(u); it != spec.grammar.end()) {
      g = it->second;
    } else if (ulf) {
      fail(ErrorKind::kInvalidArgument, "ULF " + u + " declares no grammar completion");
    } else {
      continue;
    }
    for (const auto& jt : select_jury_types(spec, jury_type)) {
      const auto w = analysis::is_dog_whistle(spec, jt, u, g);
      Json row = {{"jury_type", jt}, {"ulf", u}, {"grammar_history", g}};
      if (w) {
        found = true;
        const auto hs = spec.completions(u).histories;
        row["witness"] = {{"loaded_history", w->loaded_history},
                          {"affected_jury", w->affected_jury},
                          {"entails_grammar", discourse::entails(hs[w->loaded_history], hs[g])},
                          {"denial_available", w->denial_available},
                          {"loaded_score", rational(w->loaded_score)},
                          {"grammar_score", rational(w->grammar_score)},
                          {"loaded_relations", relations_json(hs[w->loaded_history])}};
      } else {
        row["witness"] = nullptr;
      }
      results.push_back(row);
    }
  }
  j["results"] = results;
  j["positive"] = found;
  return {dump(j), found};
}

Outcome check_ambiguity(const GameSpec& spec, const std::optional<std::string>& jury_type,
                        const std::optional<std::string>& ulf) {
  Json j = header(spec, "check ambiguity");
  Json results = Json::array();
  bool any = false;
  for (const auto& u : select_ulfs(spec, ulf)) {
    for (const auto& jt : select_jury_types(spec, jury_type)) {
      const auto r = analysis::ambiguity(spec, jt, u);
      any = any || r.ambiguous;
      Json pair = nullptr;
      if (r.distinct_pair) pair = Json::array({r.distinct_pair->first, r.distinct_pair->second});
      results.push_back({{"jury_type", jt},
                         {"ulf", u},
                         {"live", r.live},
                         {"ambiguous", r.ambiguous},
                         {"distinct_pair", pair}});
    }
  }
  j["results"] = results;
  j["positive"] = any;
  return {dump(j), any};
}

Outcome check_coherence(const GameSpec& spec, const std::optional<std::string>& ulf) {
  Json j = header(spec, "check coherence");
  Json results = Json::array();
  bool all = true;
  for (const auto& u : select_ulfs(spec, ulf)) {
    const auto c = spec.completions(u);
    Json incoherent = Json::array();
    for (const auto& raw : c.raw) {
      if (raw.violations.empty()) continue;
      incoherent.push_back({{"choice", raw.choice}, {"violations", violations_json(raw.violations)}});
    }
    all = all && !c.histories.empty();
    results.push_back({{"ulf", u},
                       {"combinations", c.raw.size()},
                       {"coherent", c.histories.size()},
                       {"incoherent", incoherent}});
  }
  j["results"] = results;
  j["positive"] = all;
  return {dump(j), all};
}

std::string enumerate(const GameSpec& spec, const std::string& ulf) {
  const auto c = spec.completions(ulf);
  std::map<std::size_t, std::vector<std::string>> live;
  for (const auto& jt : spec.type_space.jury_types) {
    try {
      for (const auto h : analysis::live_completions(spec, jt, ulf)) live[h].push_back(jt);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kKernelGap) throw;
    }
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < c.raw.size(); ++i) {
    const auto& raw = c.raw[i];
    Json row = {{"index", i}, {"choice", raw.choice}, {"coherent", raw.violations.empty()}};
    if (raw.completion_index) {
      row["completion"] = *raw.completion_index;
      row["live"] = live[*raw.completion_index];
    } else {
      row["completion"] = nullptr;
      row["live"] = Json::array();
    }
    row["relations"] = relations_json(raw.history);
    if (!raw.violations.empty()) row["violations"] = violations_json(raw.violations);
    out << row.dump() << "\n";
  }
  return out.str();
}

Outcome agree(const GameSpec& spec, const Rational& step, std::size_t max_rounds,
              std::optional<PlayerId> not_truth_interested) {
  if (!spec.agreement) fail(ErrorKind::kInvalidArgument, "scenario has no agreement section");
  AgreementSpec a = *spec.agreement;
  if (not_truth_interested) {
    if (*not_truth_interested > 1) fail(ErrorKind::kInvalidArgument, "player must be 0 or 1");
    a.truth_interested[*not_truth_interested] = false;
  }
  const auto r = analysis::agreement_sweep(a, step, max_rounds);
  const bool all = r.agreed == r.instances;
  Json j = header(spec, "agree");
  j["grid_step"] = to_string(step);
  j["max_rounds"] = max_rounds;
  j["truth_interested"] = Json::array({a.truth_interested[0], a.truth_interested[1]});
  j["instances"] = r.instances;
  j["agreed"] = r.agreed;
  j["rate"] = rational(r.instances == 0 ? Rational(1) : Rational(r.agreed) / r.instances);
  j["max_rounds_used"] = r.max_rounds_used;
  if (r.first_disagreement) {
    j["first_disagreement"] = {{"beliefs", beliefs_json(r.first_disagreement->beliefs)}};
  } else {
    j["first_disagreement"] = nullptr;
  }
  j["positive"] = all;
  return {dump(j), all};
}

std::string solve(const GameSpec& spec, const std::optional<std::string>& jury_type,
                  std::size_t depth) {
  std::string jt;
  if (jury_type) {
    require_jury_type(spec, *jury_type);
    jt = *jury_type;
  } else {
    for (const auto& t : spec.type_space.jury_types) {
      if (spec.juries.count(t)) {
        jt = t;
        break;
      }
    }
    if (jt.empty()) fail(ErrorKind::kInvalidArgument, "scenario declares no winning conditions");
  }
  const auto tree = analysis::build_tree(spec, jt, depth);
  game::check_tree(tree);
  const auto s = game::solve_finite(tree);
  Json strategy = Json::array();
  for (const auto& [path, label] : s.strategy) {
    strategy.push_back({{"node", path.empty() ? "/" : path}, {"turn", label}});
  }
  Json j = header(spec, "solve");
  j["jury_type"] = jt;
  j["depth"] = depth;
  j["nodes"] = tree.nodes.size();
  j["winner"] = s.winner;
  j["strategy"] = strategy;
  j["verified"] = game::strategy_wins_all_playouts(tree, s);
  return dump(j);
}

std::string distance(const GameSpec& spec, const std::vector<std::string>& refs) {
  std::vector<std::string> names = refs;
  if (names.empty()) {
    for (const auto& [id, n] : spec.type_space.completion_counts) {
      if (n == 1) names.push_back(id);
    }
  }
  std::vector<discourse::History> hs;
  for (const auto& ref : names) {
    const auto hash = ref.find('#');
    if (hash == std::string::npos) {
      hs.push_back(spec.history(ref));
      continue;
    }
    const std::string u = ref.substr(0, hash);
    const std::string idx = ref.substr(hash + 1);
    if (idx.empty() || !std::all_of(idx.begin(), idx.end(), ::isdigit)) {
      fail(ErrorKind::kInvalidArgument, "bad history reference " + ref);
    }
    const auto c = spec.completions(u).histories;
    const std::size_t k = std::stoul(idx);
    if (k >= c.size()) {
      fail(ErrorKind::kReference, "ULF " + u + " has " + std::to_string(c.size()) + " completions");
    }
    hs.push_back(c[k]);
  }
  Json pairs = Json::array();
  for (std::size_t a = 0; a < hs.size(); ++a) {
    for (std::size_t b = a + 1; b < hs.size(); ++b) {
      pairs.push_back({{"a", names[a]},
                       {"b", names[b]},
                       {"distance", rational(game::history_distance(hs[a], hs[b]))}});
    }
  }
  Json j = header(spec, "distance");
  j["histories"] = names;
  j["pairs"] = pairs;
  return dump(j);
}

std::string dot(const GameSpec& spec, const std::string& ulf, std::size_t completion) {
  const auto c = spec.completions(ulf).histories;
  if (completion >= c.size()) {
    fail(ErrorKind::kReference,
         "ULF " + ulf + " has " + std::to_string(c.size()) + " coherent completions");
  }
  return discourse::to_dot(c[completion], ulf);
}

}  // namespace megame::report
