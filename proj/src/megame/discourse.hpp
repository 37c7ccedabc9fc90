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

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace megame {

using PlayerId = int;
using UnitId = std::string;

}  // namespace megame

namespace megame::discourse {

// A propositional atom, possibly negated. Textual form is "atom" or "~atom".
struct Literal {
  std::string atom;
  bool negated = false;

  static Literal parse(std::string_view text);
  std::string str() const;
  Literal complement() const { return {atom, !negated}; }

  auto operator<=>(const Literal&) const = default;
};

enum class RelationName {
  kBackground,
  kIqap,
  kQap,
  kCorrection,
  kExplanation,
  kConfirmationQuestion,
  kQuestionFollowup,
  kResult,
  kReiteration,
  kElaboration,
  kContrast,
};

std::string_view relation_name(RelationName name);
std::optional<RelationName> parse_relation_name(std::string_view text);
const std::vector<RelationName>& all_relation_names();

// Whether a relation commits the speaker to the content of each argument.
struct Veridicality {
  bool source;
  bool target;
};
Veridicality veridicality(RelationName name);

struct Edu {
  UnitId id;
  PlayerId speaker = 0;
  std::string label;
  std::set<Literal> commitments;

  bool operator==(const Edu&) const = default;
};

struct Cdu {
  UnitId id;
  std::vector<UnitId> members;

  bool operator==(const Cdu&) const = default;
};

struct RelationInstance {
  RelationName relation;
  UnitId source;
  UnitId target;

  std::string str() const;
  auto operator<=>(const RelationInstance&) const = default;
};

// Which underspecified form, and which candidate per slot, produced a history.
struct Provenance {
  std::string ulf;
  std::vector<std::size_t> choice;

  bool operator==(const Provenance&) const = default;
};

struct History {
  std::vector<Edu> edus;
  std::vector<Cdu> cdus;
  std::set<RelationInstance> relations;
  std::optional<Provenance> provenance;

  bool operator==(const History&) const = default;
};

struct CommitmentSet {
  std::set<Literal> atoms;

  bool contains(const Literal& l) const { return atoms.count(l) > 0; }
  bool includes(const CommitmentSet& other) const;
  // Atoms present with both polarities.
  std::vector<std::string> conflicts() const;
  bool consistent() const { return conflicts().empty(); }
};

enum class ViolationKind {
  kDuplicateId,
  kDanglingId,
  kEmptyCdu,
  kMultipleParents,
  kCduCycle,
  kSelfRelation,
  kNestedRelation,
  kDisconnected,
  kRelationCycle,
  kContradictoryCommitments,
};

std::string_view violation_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

// Empty means coherent.
using CoherenceReport = std::vector<Violation>;

CoherenceReport validate_history(const History& h);
bool is_coherent(const History& h);

// Union of the commitments of every EDU that is committed to (it occupies a
// veridical argument position, directly or through an enclosing CDU, or it
// is not related at all), plus one rel(name,source,target) atom per relation
// instance. Throws Error(kIncoherent) on an incoherent history.
CommitmentSet commitments(const History& h);

bool entails(const History& h1, const History& h2);
bool semantically_distinct(const History& h1, const History& h2);

// Every EDU and CDU a scenario declares, by id.
struct UnitTable {
  std::map<UnitId, Edu> edus;
  std::map<UnitId, Cdu> cdus;

  bool contains(const UnitId& id) const {
    return edus.count(id) > 0 || cdus.count(id) > 0;
  }

  bool operator==(const UnitTable&) const = default;
};

struct UnderspecifiedForm {
  std::string id;
  std::vector<UnitId> order;  // EDUs in play order
  std::vector<UnitId> cdus;   // CDUs spanning those EDUs
  std::set<RelationInstance> fixed_relations;
  std::vector<std::vector<RelationInstance>> slots;

  bool operator==(const UnderspecifiedForm&) const = default;
};

// Checks the ULF's own invariants against the unit table; returns a list of
// problems (empty when well formed).
std::vector<std::string> check_ulf(const UnderspecifiedForm& u,
                                   const UnitTable& units);

struct RawCompletion {
  std::vector<std::size_t> choice;
  History history;
  CoherenceReport violations;
  std::optional<std::size_t> completion_index;  // set iff coherent
};

struct Completions {
  std::vector<RawCompletion> raw;     // full Cartesian product, canonical order
  std::vector<History> histories;     // coherent ones, same order
  std::size_t dropped() const { return raw.size() - histories.size(); }
};

// Enumerates the Cartesian product of slot candidates in lexicographic order
// of slot index then declared candidate order, keeping the coherent ones.
Completions completions(const UnderspecifiedForm& u, const UnitTable& units);

// Graphviz text: units as nodes, CDUs as clusters, relations as labelled edges.
std::string to_dot(const History& h, std::string_view graph_name = "history");

}  // namespace megame::discourse
