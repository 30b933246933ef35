// Copyright 2026 The Tempora Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Discourse constituent units, narrative threads and analysis states.

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "tempora/relation_lattice.hpp"

namespace tempora {

enum class Tense { kPast, kPresent, kFuture };

enum class SyntacticAspect {
  kSimple,
  kPerfect,
  kProgressive,
  kPerfectProgressive
};

enum class SemanticAspect { kEvent, kState, kActivity };

// Whether an attachment relates to the previous clause itself (S1) or to
// the temporal focus of a stative previous clause (TF1).
enum class AnchorKind { kS1, kTF1 };

// How a clause entered the thread structure.
enum class ThreadAction { kInitial, kContinue, kFlashback, kNewThread };

inline std::string_view to_string(Tense t) {
  switch (t) {
    case Tense::kPast: return "past";
    case Tense::kPresent: return "pres";
    case Tense::kFuture: return "fut";
  }
  return "???";
}

inline std::string_view to_string(SyntacticAspect a) {
  switch (a) {
    case SyntacticAspect::kSimple: return "simple";
    case SyntacticAspect::kPerfect: return "perf";
    case SyntacticAspect::kProgressive: return "prog";
    case SyntacticAspect::kPerfectProgressive: return "perf_prog";
  }
  return "???";
}

inline std::string_view to_string(SemanticAspect a) {
  switch (a) {
    case SemanticAspect::kEvent: return "event";
    case SemanticAspect::kState: return "state";
    case SemanticAspect::kActivity: return "activity";
  }
  return "???";
}

inline std::string_view to_string(AnchorKind k) {
  return k == AnchorKind::kS1 ? "S1" : "TF1";
}

inline std::string_view to_string(ThreadAction a) {
  switch (a) {
    case ThreadAction::kInitial: return "initial";
    case ThreadAction::kContinue: return "continue";
    case ThreadAction::kFlashback: return "flashback";
    case ThreadAction::kNewThread: return "new_thread";
  }
  return "???";
}

inline std::optional<Tense> parse_tense(std::string_view s) {
  for (Tense t : {Tense::kPast, Tense::kPresent, Tense::kFuture}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

inline std::optional<SyntacticAspect> parse_syntactic_aspect(
    std::string_view s) {
  for (SyntacticAspect a :
       {SyntacticAspect::kSimple, SyntacticAspect::kPerfect,
        SyntacticAspect::kProgressive,
        SyntacticAspect::kPerfectProgressive}) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

inline std::optional<SemanticAspect> parse_semantic_aspect(std::string_view s) {
  for (SemanticAspect a : {SemanticAspect::kEvent, SemanticAspect::kState,
                           SemanticAspect::kActivity}) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

// Perfect forms locate the eventuality before a reference time.
inline bool is_complex(SyntacticAspect a) {
  return a == SyntacticAspect::kPerfect ||
         a == SyntacticAspect::kPerfectProgressive;
}

inline bool is_stative(SemanticAspect a) { return a == SemanticAspect::kState; }
inline bool is_atelic(SemanticAspect a) { return a != SemanticAspect::kEvent; }

// Events and activities can serve as a thread's temporal focus.
inline bool is_focus_candidate(SemanticAspect a) { return !is_stative(a); }

// Anchor token in a temporal-expression directive naming the temporal focus.
inline constexpr std::string_view kFocusToken = "tf";

// Interpretation of a temporal expression: the new clause stands in
// `relation` to `anchor` (an earlier eventuality id, the token `tf`, or by
// default the clause it attaches to).
struct TempExprDirective {
  CoreRelation relation = CoreRelation::kOverlap;
  std::optional<std::string> anchor;

  bool operator==(const TempExprDirective &) const = default;
};

struct ClauseAnnotation {
  std::string id;
  Tense tense = Tense::kPast;
  SyntacticAspect syn_aspect = SyntacticAspect::kSimple;
  SemanticAspect sem_aspect = SemanticAspect::kEvent;
  std::optional<std::string> cue;
  std::optional<TempExprDirective> temp_expr;
  std::vector<std::string> words;
  std::optional<std::string> text;

  bool operator==(const ClauseAnnotation &) const = default;
};

struct Anchor {
  std::string id;
  AnchorKind kind = AnchorKind::kS1;

  auto operator<=>(const Anchor &) const = default;
};

// `from relation to`, e.g. e2 precede e1.
struct TemporalRelation {
  std::string from;
  CoreRelation relation = CoreRelation::kOverlap;
  std::string to;

  bool operator==(const TemporalRelation &) const = default;
};

inline std::string format_relation(const TemporalRelation &r) {
  return r.from + " " + std::string(to_string(r.relation)) + " " + r.to;
}

// Prose rendering: "e2 precedes e1".
inline std::string describe(const TemporalRelation &r) {
  std::string_view verb;
  switch (r.relation) {
    case CoreRelation::kJustAfter: verb = "just-after"; break;
    case CoreRelation::kPrecede: verb = "precedes"; break;
    case CoreRelation::kOverlap: verb = "overlaps"; break;
    case CoreRelation::kSameEvent: verb = "same-event"; break;
  }
  return r.from + " " + std::string(verb) + " " + r.to;
}

// A discourse constituent unit: one clause plus what the analysis decided
// about it.
struct Dcu {
  ClauseAnnotation annotation;
  std::optional<RelationNode> rhet_reln;
  std::optional<Anchor> anchor;
  std::vector<TemporalRelation> temp_relns;
  int thread = 0;  // label of the thread the clause joined
  int tier = 0;    // preference tier of the chosen relation
  ThreadAction action = ThreadAction::kInitial;

  bool operator==(const Dcu &) const = default;
};

struct Thread {
  int label = 0;
  std::vector<std::string> members;
  Tense last_tense = Tense::kPast;
  SyntacticAspect last_aspect = SyntacticAspect::kSimple;
  std::optional<std::string> tempfoc;
  std::set<std::string> content_words;

  bool operator==(const Thread &) const = default;
};

inline Thread make_thread(int label, const ClauseAnnotation &first) {
  Thread t;
  t.label = label;
  t.members = {first.id};
  t.last_tense = first.tense;
  t.last_aspect = first.syn_aspect;
  if (is_focus_candidate(first.sem_aspect)) t.tempfoc = first.id;
  t.content_words.insert(first.words.begin(), first.words.end());
  return t;
}

inline Thread extend_thread(Thread t, const ClauseAnnotation &c) {
  t.members.push_back(c.id);
  t.last_tense = c.tense;
  t.last_aspect = c.syn_aspect;
  if (is_focus_candidate(c.sem_aspect)) t.tempfoc = c.id;
  t.content_words.insert(c.words.begin(), c.words.end());
  return t;
}

inline std::string thread_name(int label) { return "T" + std::to_string(label); }

// Temporal center: open threads as a stack (index 0 is the bottom), the
// thread currently followed, and threads closed for continuation.
struct TempCenter {
  std::vector<Thread> fwd_center;
  std::size_t bkwd_center = 0;
  std::vector<Thread> closed_threads;

  int next_label() const {
    return static_cast<int>(fwd_center.size() + closed_threads.size()) + 1;
  }

  bool operator==(const TempCenter &) const = default;
};

// A partial or complete reading. Values are never mutated once built;
// extending a state copies it.
struct AnalysisState {
  std::vector<Dcu> dcus;
  TempCenter center;
  double score = 0.0;
  std::vector<std::string> log;

  const Dcu *find(std::string_view id) const {
    for (const Dcu &d : dcus) {
      if (d.annotation.id == id) return &d;
    }
    return nullptr;
  }

  bool operator==(const AnalysisState &) const = default;
};

// Checks a clause in isolation against the cue lexicon.
inline void validate_clause(const ClauseAnnotation &c, const CueLexicon &cues) {
  if (c.id.empty()) throw InputError("clause with empty id");
  if (c.id == kFocusToken) {
    throw InputError("clause id '" + c.id + "' is reserved");
  }
  if (c.cue && !cues.contains(*c.cue)) {
    throw InputError(c.id + ": unknown cue '" + *c.cue + "'");
  }
}

// Checks a whole discourse: unique ids, known cues, and temporal-expression
// anchors that name an earlier eventuality.
inline void validate_discourse(std::span<const ClauseAnnotation> discourse,
                               const CueLexicon &cues) {
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < discourse.size(); ++i) {
    const ClauseAnnotation &c = discourse[i];
    validate_clause(c, cues);
    if (c.temp_expr) {
      if (i == 0) {
        throw InputError(c.id + ": temporal expression on the first clause");
      }
      const auto &anchor = c.temp_expr->anchor;
      if (anchor && *anchor != kFocusToken && !seen.count(*anchor)) {
        throw InputError(c.id + ": temporal expression anchor '" + *anchor +
                         "' is not an earlier eventuality");
      }
    }
    if (!seen.insert(c.id).second) {
      throw InputError("duplicate clause id '" + c.id + "'");
    }
  }
}

// Starts an analysis with one thread holding the first clause.
inline AnalysisState new_discourse(const ClauseAnnotation &first,
                                   const CueLexicon &cues) {
  const ClauseAnnotation clause[] = {first};
  validate_discourse(clause, cues);
  AnalysisState s;
  Dcu d;
  d.annotation = first;
  d.thread = 1;
  s.dcus.push_back(std::move(d));
  s.center.fwd_center.push_back(make_thread(1, first));
  s.center.bkwd_center = 0;
  s.log.push_back(first.id + ": opens " + thread_name(1));
  return s;
}

// Accumulated temporal relations in discourse order.
inline std::vector<TemporalRelation> eventuality_order(
    const AnalysisState &state) {
  std::vector<TemporalRelation> out;
  for (const Dcu &d : state.dcus) {
    out.insert(out.end(), d.temp_relns.begin(), d.temp_relns.end());
  }
  return out;
}

// Canonical serialization used for hashing and debugging.
inline std::string serialize(const AnalysisState &s) {
  std::ostringstream out;
  for (const Dcu &d : s.dcus) {
    out << d.annotation.id << '|' << (d.rhet_reln ? d.rhet_reln->name() : "-")
        << '|' << (d.anchor ? d.anchor->id : "-") << '|'
        << (d.anchor ? to_string(d.anchor->kind) : "-") << '|' << d.thread
        << '|' << d.tier << '|' << to_string(d.action);
    for (const auto &r : d.temp_relns) out << '|' << format_relation(r);
    out << ';';
  }
  auto dump = [&out](const Thread &t) {
    out << t.label << '[';
    for (const auto &m : t.members) out << m << ',';
    out << ']' << to_string(t.last_tense) << to_string(t.last_aspect) << '/'
        << t.tempfoc.value_or("-") << '{';
    for (const auto &w : t.content_words) out << w << ',';
    out << '}';
  };
  out << "fwd:";
  for (const Thread &t : s.center.fwd_center) dump(t);
  out << "cur:" << s.center.bkwd_center << "closed:";
  for (const Thread &t : s.center.closed_threads) dump(t);
  out << "score:" << s.score << "log:";
  for (const auto &l : s.log) out << l << '\n';
  return out.str();
}

inline std::size_t state_hash(const AnalysisState &s) {
  return std::hash<std::string>{}(serialize(s));
}

}  // namespace tempora
