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

#include "megame/discourse.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>

#include "megame/error.hpp"

namespace megame::discourse {

Literal Literal::parse(std::string_view text) {
  Literal l;
  if (!text.empty() && text.front() == '~') {
    l.negated = true;
    text.remove_prefix(1);
  } else if (text.substr(0, 2) == "\xC2\xAC") {  // U+00AC NOT SIGN
    l.negated = true;
    text.remove_prefix(2);
  }
  if (text.empty()) fail(ErrorKind::kParse, "empty atom");
  l.atom = std::string(text);
  return l;
}

std::string Literal::str() const { return negated ? "~" + atom : atom; }

namespace {

struct RelationInfo {
  RelationName name;
  std::string_view text;
  Veridicality veridical;
};

constexpr std::array<RelationInfo, 11> kRelations{{
    {RelationName::kBackground, "background", {true, true}},
    {RelationName::kIqap, "iqap", {true, true}},
    {RelationName::kQap, "qap", {true, true}},
    {RelationName::kCorrection, "correction", {false, true}},
    {RelationName::kExplanation, "explanation", {true, true}},
    {RelationName::kConfirmationQuestion, "confirmation_question", {false, false}},
    {RelationName::kQuestionFollowup, "question_followup", {false, false}},
    {RelationName::kResult, "result", {true, true}},
    {RelationName::kReiteration, "reiteration", {true, true}},
    {RelationName::kElaboration, "elaboration", {true, true}},
    {RelationName::kContrast, "contrast", {true, true}},
}};

const RelationInfo& info(RelationName name) {
  return kRelations[static_cast<std::size_t>(name)];
}

}  // namespace

std::string_view relation_name(RelationName name) { return info(name).text; }

std::optional<RelationName> parse_relation_name(std::string_view text) {
  for (const auto& r : kRelations) {
    if (r.text == text) return r.name;
  }
  return std::nullopt;
}

const std::vector<RelationName>& all_relation_names() {
  static const std::vector<RelationName> names = [] {
    std::vector<RelationName> v;
    for (const auto& r : kRelations) v.push_back(r.name);
    return v;
  }();
  return names;
}

Veridicality veridicality(RelationName name) { return info(name).veridical; }

std::string RelationInstance::str() const {
  return std::string(relation_name(relation)) + "(" + source + "," + target + ")";
}

bool CommitmentSet::includes(const CommitmentSet& other) const {
  return std::includes(atoms.begin(), atoms.end(), other.atoms.begin(),
                       other.atoms.end());
}

std::vector<std::string> CommitmentSet::conflicts() const {
  std::vector<std::string> out;
  for (const auto& l : atoms) {
    if (!l.negated && atoms.count(l.complement())) out.push_back(l.atom);
  }
  return out;
}

std::string_view violation_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDuplicateId: return "duplicate_id";
    case ViolationKind::kDanglingId: return "dangling_id";
    case ViolationKind::kEmptyCdu: return "empty_cdu";
    case ViolationKind::kMultipleParents: return "multiple_parents";
    case ViolationKind::kCduCycle: return "cdu_cycle";
    case ViolationKind::kSelfRelation: return "self_relation";
    case ViolationKind::kNestedRelation: return "nested_relation";
    case ViolationKind::kDisconnected: return "disconnected";
    case ViolationKind::kRelationCycle: return "relation_cycle";
    case ViolationKind::kContradictoryCommitments: return "contradictory_commitments";
  }
  return "unknown";
}

namespace {

// Membership structure of a history whose ids, members and endpoints have
// already been checked to resolve.
class Structure {
 public:
  explicit Structure(const History& h) : h_(h) {
    for (const auto& e : h.edus) known_.insert(e.id);
    for (const auto& c : h.cdus) {
      known_.insert(c.id);
      members_[c.id] = c.members;
      for (const auto& m : c.members) parents_[m].push_back(c.id);
    }
  }

  bool known(const UnitId& id) const { return known_.count(id) > 0; }

  const std::map<UnitId, std::vector<UnitId>>& parents() const { return parents_; }

  std::optional<UnitId> parent(const UnitId& id) const {
    auto it = parents_.find(id);
    if (it == parents_.end() || it->second.empty()) return std::nullopt;
    return it->second.front();
  }

  // id, parent(id), parent(parent(id)), ...
  std::vector<UnitId> chain(const UnitId& id) const {
    std::vector<UnitId> out{id};
    for (auto p = parent(id); p; p = parent(*p)) out.push_back(*p);
    return out;
  }

  bool has_membership_cycle(std::string& where) const {
    enum class Mark { kNone, kActive, kDone };
    std::map<UnitId, Mark> mark;
    std::function<bool(const UnitId&)> visit = [&](const UnitId& u) {
      auto& m = mark[u];
      if (m == Mark::kActive) {
        where = u;
        return true;
      }
      if (m == Mark::kDone) return false;
      m = Mark::kActive;
      auto it = members_.find(u);
      if (it != members_.end()) {
        for (const auto& child : it->second) {
          if (visit(child)) return true;
        }
      }
      mark[u] = Mark::kDone;
      return false;
    };
    for (const auto& [id, _] : members_) {
      if (visit(id)) return true;
    }
    return false;
  }

  // Units of a container; "" is the top level.
  std::vector<UnitId> container_members(const UnitId& container) const {
    if (!container.empty()) return members_.at(container);
    std::vector<UnitId> top;
    for (const auto& e : h_.edus) {
      if (!parent(e.id)) top.push_back(e.id);
    }
    for (const auto& c : h_.cdus) {
      if (!parent(c.id)) top.push_back(c.id);
    }
    return top;
  }

  std::vector<UnitId> containers() const {
    std::vector<UnitId> out{""};
    for (const auto& c : h_.cdus) out.push_back(c.id);
    return out;
  }

 private:
  const History& h_;
  std::set<UnitId> known_;
  std::map<UnitId, std::vector<UnitId>> members_;
  std::map<UnitId, std::vector<UnitId>> parents_;
};

struct ProjectedEdge {
  UnitId container;
  UnitId from;
  UnitId to;
};

// Lifts a relation to the innermost container holding both endpoints.
// Returns nullopt when one endpoint contains the other.
std::optional<ProjectedEdge> project(const Structure& s,
                                     const RelationInstance& r) {
  const auto cs = s.chain(r.source);
  const auto ct = s.chain(r.target);
  if (std::find(cs.begin(), cs.end(), r.target) != cs.end() ||
      std::find(ct.begin(), ct.end(), r.source) != ct.end()) {
    return std::nullopt;
  }
  // Containers enclosing each endpoint, innermost first, ending at "".
  std::vector<UnitId> as(cs.begin() + 1, cs.end());
  as.push_back("");
  std::vector<UnitId> at(ct.begin() + 1, ct.end());
  at.push_back("");
  for (std::size_t i = 0; i < as.size(); ++i) {
    auto it = std::find(at.begin(), at.end(), as[i]);
    if (it == at.end()) continue;
    const std::size_t j = static_cast<std::size_t>(it - at.begin());
    return ProjectedEdge{as[i], cs[i], ct[j]};
  }
  return std::nullopt;  // unreachable: "" is shared
}

std::vector<std::vector<UnitId>> components(
    const std::vector<UnitId>& nodes,
    const std::vector<std::pair<UnitId, UnitId>>& edges) {
  std::map<UnitId, UnitId> root;
  for (const auto& n : nodes) root[n] = n;
  std::function<UnitId(const UnitId&)> find = [&](const UnitId& x) -> UnitId {
    UnitId r = root.at(x);
    if (r == x) return x;
    r = find(r);
    root[x] = r;
    return r;
  };
  for (const auto& [a, b] : edges) {
    const UnitId ra = find(a), rb = find(b);
    if (ra != rb) root[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::map<UnitId, std::vector<UnitId>> groups;
  for (const auto& n : nodes) groups[find(n)].push_back(n);
  std::vector<std::vector<UnitId>> out;
  for (auto& [_, g] : groups) out.push_back(std::move(g));
  return out;
}

bool has_cycle(const std::vector<UnitId>& nodes,
               const std::vector<std::pair<UnitId, UnitId>>& edges) {
  std::map<UnitId, std::vector<UnitId>> out;
  std::map<UnitId, int> indegree;
  for (const auto& n : nodes) indegree[n] = 0;
  for (const auto& [a, b] : edges) {
    out[a].push_back(b);
    ++indegree[b];
  }
  std::vector<UnitId> ready;
  for (const auto& [n, d] : indegree) {
    if (d == 0) ready.push_back(n);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const UnitId n = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& m : out[n]) {
      if (--indegree[m] == 0) ready.push_back(m);
    }
  }
  return seen != nodes.size();
}

std::string join(const std::vector<UnitId>& ids, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += sep;
    out += ids[i];
  }
  return out;
}

CommitmentSet derive_commitments(const History& h, const Structure& s) {
  // For every unit: does it occur in a relation, and does some occurrence
  // commit to it?
  std::map<UnitId, bool> occurs, committed;
  for (const auto& r : h.relations) {
    const Veridicality v = veridicality(r.relation);
    occurs[r.source] = true;
    occurs[r.target] = true;
    if (v.source) committed[r.source] = true;
    if (v.target) committed[r.target] = true;
  }
  CommitmentSet out;
  for (const auto& e : h.edus) {
    bool any_occurrence = false, any_commit = false;
    for (const auto& u : s.chain(e.id)) {
      any_occurrence = any_occurrence || occurs[u];
      any_commit = any_commit || committed[u];
    }
    if (!any_occurrence || any_commit) {
      out.atoms.insert(e.commitments.begin(), e.commitments.end());
    }
  }
  for (const auto& r : h.relations) {
    out.atoms.insert(Literal{"rel(" + std::string(relation_name(r.relation)) +
                                 "," + r.source + "," + r.target + ")",
                             false});
  }
  return out;
}

}  // namespace

CoherenceReport validate_history(const History& h) {
  CoherenceReport report;
  auto add = [&](ViolationKind k, std::string detail) {
    report.push_back({k, std::move(detail)});
  };

  std::set<UnitId> ids;
  for (const auto& e : h.edus) {
    if (!ids.insert(e.id).second) add(ViolationKind::kDuplicateId, e.id);
    for (const auto& l : e.commitments) {
      if (!l.negated && e.commitments.count(l.complement())) {
        add(ViolationKind::kContradictoryCommitments, e.id + ": " + l.atom);
      }
    }
  }
  for (const auto& c : h.cdus) {
    if (!ids.insert(c.id).second) add(ViolationKind::kDuplicateId, c.id);
  }

  bool structural = report.empty();
  for (const auto& c : h.cdus) {
    if (c.members.empty()) {
      add(ViolationKind::kEmptyCdu, c.id);
      structural = false;
    }
    for (const auto& m : c.members) {
      if (!ids.count(m)) {
        add(ViolationKind::kDanglingId, c.id + " member " + m);
        structural = false;
      }
    }
  }
  for (const auto& r : h.relations) {
    for (const auto* end : {&r.source, &r.target}) {
      if (!ids.count(*end)) {
        add(ViolationKind::kDanglingId, r.str() + " endpoint " + *end);
        structural = false;
      }
    }
    if (r.source == r.target) {
      add(ViolationKind::kSelfRelation, r.str());
      structural = false;
    }
  }

  const Structure s(h);
  for (const auto& [unit, ps] : s.parents()) {
    if (ps.size() > 1) {
      add(ViolationKind::kMultipleParents, unit + " in " + join(ps));
      structural = false;
    }
  }
  std::string where;
  if (structural && s.has_membership_cycle(where)) {
    add(ViolationKind::kCduCycle, where);
    structural = false;
  }
  if (!structural) return report;

  std::map<UnitId, std::vector<std::pair<UnitId, UnitId>>> edges;
  for (const auto& r : h.relations) {
    auto e = project(s, r);
    if (!e) {
      add(ViolationKind::kNestedRelation, r.str());
      continue;
    }
    edges[e->container].emplace_back(e->from, e->to);
  }
  for (const auto& container : s.containers()) {
    const auto members = s.container_members(container);
    if (members.size() <= 1) continue;
    const auto& es = edges[container];
    const auto comps = components(members, es);
    if (comps.size() > 1) {
      std::string detail = container.empty() ? "top level:" : container + ":";
      for (const auto& c : comps) detail += " {" + join(c) + "}";
      add(ViolationKind::kDisconnected, detail);
    }
    if (has_cycle(members, es)) {
      add(ViolationKind::kRelationCycle,
          container.empty() ? std::string("top level") : container);
    }
  }

  const auto conflicts = derive_commitments(h, s).conflicts();
  if (!conflicts.empty()) {
    add(ViolationKind::kContradictoryCommitments, join(conflicts));
  }
  return report;
}

bool is_coherent(const History& h) { return validate_history(h).empty(); }

CommitmentSet commitments(const History& h) {
  const auto report = validate_history(h);
  if (!report.empty()) {
    fail(ErrorKind::kIncoherent,
         "incoherent input: " + std::string(violation_name(report.front().kind)) +
             " (" + report.front().detail + ")");
  }
  return derive_commitments(h, Structure(h));
}

bool entails(const History& h1, const History& h2) {
  return commitments(h1).includes(commitments(h2));
}

bool semantically_distinct(const History& h1, const History& h2) {
  return !entails(h1, h2) && !entails(h2, h1);
}

std::vector<std::string> check_ulf(const UnderspecifiedForm& u,
                                   const UnitTable& units) {
  std::vector<std::string> problems;
  std::set<UnitId> in_scope;
  for (const auto& id : u.order) {
    if (!units.edus.count(id)) problems.push_back("order names unknown EDU " + id);
    if (!in_scope.insert(id).second) problems.push_back("order repeats " + id);
  }
  for (const auto& id : u.cdus) {
    if (!units.cdus.count(id)) problems.push_back("unknown CDU " + id);
    if (!in_scope.insert(id).second) problems.push_back("repeated CDU " + id);
  }
  auto check_relation = [&](const RelationInstance& r, const std::string& where) {
    for (const auto* end : {&r.source, &r.target}) {
      if (!in_scope.count(*end)) {
        problems.push_back(where + " " + r.str() + " references " + *end +
                           " outside the form");
      }
    }
  };
  for (const auto& r : u.fixed_relations) check_relation(r, "fixed relation");
  for (std::size_t i = 0; i < u.slots.size(); ++i) {
    const auto& slot = u.slots[i];
    const std::string where = "slot " + std::to_string(i);
    if (slot.empty()) problems.push_back(where + " has no candidates");
    std::set<RelationInstance> seen;
    for (const auto& r : slot) {
      if (!seen.insert(r).second) problems.push_back(where + " repeats " + r.str());
      check_relation(r, where);
    }
  }
  return problems;
}

Completions completions(const UnderspecifiedForm& u, const UnitTable& units) {
  History base;
  for (const auto& id : u.order) {
    auto it = units.edus.find(id);
    if (it != units.edus.end()) base.edus.push_back(it->second);
  }
  for (const auto& id : u.cdus) {
    auto it = units.cdus.find(id);
    if (it != units.cdus.end()) base.cdus.push_back(it->second);
  }
  base.relations = u.fixed_relations;

  Completions out;
  std::vector<std::size_t> choice(u.slots.size(), 0);
  for (const auto& slot : u.slots) {
    if (slot.empty()) return out;
  }
  while (true) {
    RawCompletion raw;
    raw.choice = choice;
    raw.history = base;
    for (std::size_t i = 0; i < u.slots.size(); ++i) {
      raw.history.relations.insert(u.slots[i][choice[i]]);
    }
    raw.history.provenance = Provenance{u.id, choice};
    raw.violations = validate_history(raw.history);
    if (raw.violations.empty()) {
      raw.completion_index = out.histories.size();
      out.histories.push_back(raw.history);
    }
    out.raw.push_back(std::move(raw));

    // Odometer increment, last slot fastest.
    std::size_t i = u.slots.size();
    while (i > 0) {
      --i;
      if (++choice[i] < u.slots[i].size()) break;
      choice[i] = 0;
      if (i == 0) return out;
    }
    if (u.slots.empty()) return out;
  }
}

namespace {

std::string dot_quote(std::string_view text) {
  std::string out;
  for (const char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const History& h, std::string_view graph_name) {
  std::ostringstream os;
  os << "digraph \"" << dot_quote(graph_name) << "\" {\n  compound=true;\n";
  const Structure s(h);
  std::map<UnitId, const Cdu*> cdu_by_id;
  for (const auto& c : h.cdus) cdu_by_id[c.id] = &c;
  std::map<UnitId, const Edu*> edu_by_id;
  for (const auto& e : h.edus) edu_by_id[e.id] = &e;

  // A CDU is drawn as a cluster; edges touching it attach to its first EDU.
  std::function<UnitId(const UnitId&)> anchor = [&](const UnitId& id) -> UnitId {
    auto it = cdu_by_id.find(id);
    if (it == cdu_by_id.end() || it->second->members.empty()) return id;
    return anchor(it->second->members.front());
  };
  std::function<void(const UnitId&, int)> emit = [&](const UnitId& id, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    if (auto e = edu_by_id.find(id); e != edu_by_id.end()) {
      os << pad << "\"" << id << "\" [label=\"" << id;
      if (!e->second->label.empty()) os << "\\n" << dot_quote(e->second->label);
      os << "\"];\n";
      return;
    }
    if (auto c = cdu_by_id.find(id); c != cdu_by_id.end()) {
      os << pad << "subgraph \"cluster_" << id << "\" {\n"
         << pad << "  label=\"" << id << "\";\n";
      for (const auto& m : c->second->members) emit(m, depth + 1);
      os << pad << "}\n";
    }
  };
  for (const auto& e : h.edus) {
    if (!s.parent(e.id)) emit(e.id, 1);
  }
  for (const auto& c : h.cdus) {
    if (!s.parent(c.id)) emit(c.id, 1);
  }
  for (const auto& r : h.relations) {
    os << "  \"" << anchor(r.source) << "\" -> \"" << anchor(r.target)
       << "\" [label=\"" << relation_name(r.relation) << "\"";
    if (cdu_by_id.count(r.source)) os << ", ltail=\"cluster_" << r.source << "\"";
    if (cdu_by_id.count(r.target)) os << ", lhead=\"cluster_" << r.target << "\"";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace megame::discourse
