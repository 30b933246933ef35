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

// Feasible attachments of a new clause to the last clause of a thread.
//
// Two sources of feasibility are combined. When the new clause is a simple
// past event and the previous clause is in the past, the tense/aspect
// matrix loaded from the table file decides. Everything else goes through
// the general aspect rules in feasible_general(). Explicit markers (temporal
// expressions and cue words) are applied afterwards and take priority.

#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "tempora/discourse_model.hpp"
#include "tempora/relation_lattice.hpp"

namespace tempora {

enum class TenseGroup { kPast, kPastPerfect };
enum class Allowance { kNo, kYes, kMarginal };
enum class OptionSource { kTable, kBullets, kTempExpr, kCue };

inline std::string_view to_string(TenseGroup g) {
  return g == TenseGroup::kPast ? "past" : "past_perfect";
}

inline std::string_view to_string(Allowance a) {
  switch (a) {
    case Allowance::kNo: return "no";
    case Allowance::kYes: return "yes";
    case Allowance::kMarginal: return "marginal";
  }
  return "???";
}

inline std::string_view to_string(OptionSource s) {
  switch (s) {
    case OptionSource::kTable: return "table";
    case OptionSource::kBullets: return "bullets";
    case OptionSource::kTempExpr: return "temp_expr";
    case OptionSource::kCue: return "cue";
  }
  return "???";
}

// Past-tense clauses split into simple past and past perfect; other tenses
// have no group.
inline std::optional<TenseGroup> tense_group(const ClauseAnnotation &c) {
  if (c.tense != Tense::kPast) return std::nullopt;
  return is_complex(c.syn_aspect) ? TenseGroup::kPastPerfect
                                  : TenseGroup::kPast;
}

struct AttachmentOption {
  Anchor anchor;
  RelationNode relation;
  OptionSource source = OptionSource::kBullets;

  bool operator==(const AttachmentOption &) const = default;
};

inline std::string format_option(const AttachmentOption &o) {
  return o.relation.name() + "@" + o.anchor.id +
         (o.anchor.kind == AnchorKind::kTF1 ? "(TF1)" : "");
}

// What the new clause can attach to within one thread: the thread's last
// clause, the thread's temporal focus, and the thread's members (for
// explicitly anchored temporal expressions).
struct AttachmentContext {
  ClauseAnnotation s1;
  std::optional<ClauseAnnotation> tempfoc;
  std::vector<std::string> thread_members;
};

// The tense/aspect feasibility matrix for a simple past event S2.
class FeasibilityTable {
 public:
  struct Cell {
    TenseGroup group;
    SemanticAspect sem;
    AnchorKind anchor;
    CoreRelation relation;
    Allowance allow;
  };

  static constexpr std::size_t kCellCount = 32;

  // Parses lines of the form
  //   s1=<past|past_perfect>,<event|state|activity> anchor=<s1|tf1>
  //   rel=<relation> allow=<yes|no|marginal>
  static FeasibilityTable parse(std::istream &in,
                                std::string_view source = "table") {
    FeasibilityTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      std::istringstream fields(line);
      std::string field;
      std::optional<std::string> s1, anchor, rel, allow;
      auto where = std::string(source) + ":" + std::to_string(lineno) + ": ";
      bool any = false;
      while (fields >> field) {
        any = true;
        auto eq = field.find('=');
        if (eq == std::string::npos) throw InputError(where + "bad field");
        std::string key = field.substr(0, eq), value = field.substr(eq + 1);
        std::optional<std::string> *slot = key == "s1"       ? &s1
                                           : key == "anchor" ? &anchor
                                           : key == "rel"    ? &rel
                                           : key == "allow"  ? &allow
                                                             : nullptr;
        if (slot == nullptr) throw InputError(where + "unknown key " + key);
        if (*slot) throw InputError(where + "duplicate key " + key);
        *slot = value;
      }
      if (!any) continue;
      if (!s1 || !anchor || !rel || !allow) {
        throw InputError(where + "missing field");
      }
      auto comma = s1->find(',');
      if (comma == std::string::npos) throw InputError(where + "bad s1");
      Cell cell{};
      std::string group = s1->substr(0, comma);
      if (group == "past") {
        cell.group = TenseGroup::kPast;
      } else if (group == "past_perfect") {
        cell.group = TenseGroup::kPastPerfect;
      } else {
        throw InputError(where + "bad tense group " + group);
      }
      auto sem = parse_semantic_aspect(s1->substr(comma + 1));
      if (!sem) throw InputError(where + "bad semantic aspect");
      cell.sem = *sem;
      if (*anchor == "s1") {
        cell.anchor = AnchorKind::kS1;
      } else if (*anchor == "tf1") {
        cell.anchor = AnchorKind::kTF1;
      } else {
        throw InputError(where + "bad anchor " + *anchor);
      }
      auto r = parse_core_relation(*rel);
      if (!r) throw InputError(where + "bad relation " + *rel);
      cell.relation = *r;
      if (*allow == "yes") {
        cell.allow = Allowance::kYes;
      } else if (*allow == "no") {
        cell.allow = Allowance::kNo;
      } else if (*allow == "marginal") {
        cell.allow = Allowance::kMarginal;
      } else {
        throw InputError(where + "bad allowance " + *allow);
      }
      if (cell.anchor == AnchorKind::kTF1 && !is_stative(cell.sem)) {
        throw InputError(where + "tf1 rows are only defined for states");
      }
      auto &slot = table.slots_[slot_index(cell.group, cell.sem, cell.anchor,
                                           cell.relation)];
      if (slot) throw InputError(where + "duplicate cell");
      slot = cell.allow;
    }
    if (table.cells().size() != kCellCount) {
      throw InputError(std::string(source) + ": expected " +
                       std::to_string(kCellCount) + " cells, found " +
                       std::to_string(table.cells().size()));
    }
    return table;
  }

  static FeasibilityTable load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open table file " + path.string());
    return parse(in, path.string());
  }

  std::optional<Allowance> cell(TenseGroup g, SemanticAspect sem,
                                AnchorKind anchor, CoreRelation r) const {
    return slots_[slot_index(g, sem, anchor, r)];
  }

  std::vector<Cell> cells() const {
    std::vector<Cell> out;
    for (TenseGroup g : {TenseGroup::kPast, TenseGroup::kPastPerfect}) {
      for (SemanticAspect sem : {SemanticAspect::kEvent,
                                 SemanticAspect::kActivity,
                                 SemanticAspect::kState}) {
        for (AnchorKind k : {AnchorKind::kS1, AnchorKind::kTF1}) {
          for (CoreRelation r : kCoreRelations) {
            if (auto a = cell(g, sem, k, r)) out.push_back({g, sem, k, r, *a});
          }
        }
      }
    }
    return out;
  }

 private:
  static std::size_t slot_index(TenseGroup g, SemanticAspect sem,
                                AnchorKind anchor, CoreRelation r) {
    return ((static_cast<std::size_t>(g) * 3 + static_cast<std::size_t>(sem)) *
                2 +
            static_cast<std::size_t>(anchor)) *
               4 +
           static_cast<std::size_t>(r);
  }

  std::array<std::optional<Allowance>, 48> slots_{};
};

// True when the matrix governs: S2 is a simple past event and S1 is past.
inline bool is_table_case(const ClauseAnnotation &s1,
                          const ClauseAnnotation &s2) {
  return s2.tense == Tense::kPast &&
         s2.syn_aspect == SyntacticAspect::kSimple &&
         s2.sem_aspect == SemanticAspect::kEvent && tense_group(s1).has_value();
}

// The anchor "the temporal focus of e1": e1 itself when it is an event or
// activity, otherwise the thread's focus if there is one.
inline std::optional<Anchor> focus_anchor(const AttachmentContext &ctx) {
  if (is_focus_candidate(ctx.s1.sem_aspect)) {
    return Anchor{ctx.s1.id, AnchorKind::kS1};
  }
  if (ctx.tempfoc) return Anchor{ctx.tempfoc->id, AnchorKind::kTF1};
  return std::nullopt;
}

inline void sort_options(std::vector<AttachmentOption> &options) {
  std::sort(options.begin(), options.end(),
            [](const AttachmentOption &a, const AttachmentOption &b) {
              return std::tie(a.anchor.kind, a.relation, a.anchor.id) <
                     std::tie(b.anchor.kind, b.relation, b.anchor.id);
            });
}

// Options for a simple past event S2 read directly off the matrix. TF1 cells
// need a stative S1 whose thread has a temporal focus.
inline std::vector<AttachmentOption> feasible_simple_past_event(
    const AttachmentContext &ctx, const FeasibilityTable &table,
    bool allow_marginal = false) {
  std::vector<AttachmentOption> out;
  auto group = tense_group(ctx.s1);
  if (!group) return out;
  for (AnchorKind kind : {AnchorKind::kS1, AnchorKind::kTF1}) {
    std::string anchor_id = ctx.s1.id;
    if (kind == AnchorKind::kTF1) {
      if (!is_stative(ctx.s1.sem_aspect) || !ctx.tempfoc) continue;
      anchor_id = ctx.tempfoc->id;
    }
    for (CoreRelation r : kCoreRelations) {
      auto allow = table.cell(*group, ctx.s1.sem_aspect, kind, r);
      if (!allow) continue;
      if (*allow == Allowance::kYes ||
          (*allow == Allowance::kMarginal && allow_marginal)) {
        out.push_back({Anchor{anchor_id, kind}, RelationNode(r),
                       OptionSource::kTable});
      }
    }
  }
  sort_options(out);
  return out;
}

// The general aspect rules. Overlap is licensed when either clause is a
// state; just-after relates to the temporal focus of S1; precede needs an
// eventive S2 or a past perfect state after a non-activity; elaboration
// (same_event) needs an eventive S1, an activity elaborated by an atelic, or
// two states with a simple S2 or a perfect S1.
inline std::vector<AttachmentOption> feasible_general(
    const AttachmentContext &ctx, const ClauseAnnotation &s2) {
  const SemanticAspect a1 = ctx.s1.sem_aspect, a2 = s2.sem_aspect;
  const bool s1_complex = is_complex(ctx.s1.syn_aspect);
  const bool s2_complex = is_complex(s2.syn_aspect);
  const Anchor s1_anchor{ctx.s1.id, AnchorKind::kS1};
  std::vector<AttachmentOption> out;
  auto add = [&out](const Anchor &anchor, CoreRelation r) {
    out.push_back({anchor, RelationNode(r), OptionSource::kBullets});
  };

  if (is_stative(a1) || is_stative(a2)) add(s1_anchor, CoreRelation::kOverlap);

  if (auto focus = focus_anchor(ctx)) {
    bool just_after =
        (a2 == SemanticAspect::kEvent && !s2_complex) ||
        (s1_complex && s2_complex && a2 == SemanticAspect::kEvent) ||
        (a1 == SemanticAspect::kEvent && is_atelic(a2)) ||
        (is_stative(a1) && a2 == SemanticAspect::kActivity && !s2_complex);
    if (just_after) add(*focus, CoreRelation::kJustAfter);
  }

  if (a2 == SemanticAspect::kEvent ||
      (a1 != SemanticAspect::kActivity && is_stative(a2) && s2_complex &&
       s2.tense == Tense::kPast)) {
    add(s1_anchor, CoreRelation::kPrecede);
  }

  // A perfect event following a simple clause is placed before it; it does
  // not elaborate it.
  bool backshifted_event =
      a2 == SemanticAspect::kEvent && s2_complex && !s1_complex;
  bool elaborates =
      (a1 == SemanticAspect::kEvent && !backshifted_event) ||
      (a1 == SemanticAspect::kActivity && is_atelic(a2)) ||
      (is_stative(a1) && is_stative(a2) && (!s2_complex || s1_complex));
  if (elaborates) add(s1_anchor, CoreRelation::kSameEvent);

  sort_options(out);
  return out;
}

// Dispatches to the matrix or the general rules.
inline std::vector<AttachmentOption> feasible_options(
    const AttachmentContext &ctx, const ClauseAnnotation &s2,
    const FeasibilityTable &table, bool allow_marginal) {
  if (is_table_case(ctx.s1, s2)) {
    return feasible_simple_past_event(ctx, table, allow_marginal);
  }
  return feasible_general(ctx, s2);
}

inline std::string format_temp_expr(const TempExprDirective &tx) {
  std::string s = "temprel=" + std::string(to_string(tx.relation));
  if (tx.anchor) s += "@" + *tx.anchor;
  return s;
}

struct ExplicitResult {
  std::vector<AttachmentOption> options;
  // Set when explicit markers contradict each other or every default option.
  std::optional<std::string> clash;
};

// Applies a temporal expression (which replaces the default options) and a
// cue (which is met against every remaining option).
inline ExplicitResult apply_explicit(
    const AttachmentContext &ctx, std::vector<AttachmentOption> options,
    const std::optional<CueMarker> &cue,
    const std::optional<TempExprDirective> &tx, const Lattice &lattice) {
  ExplicitResult result;
  if (tx) {
    std::optional<Anchor> anchor;
    if (!tx->anchor) {
      anchor = Anchor{ctx.s1.id, AnchorKind::kS1};
    } else if (*tx->anchor == kFocusToken) {
      anchor = focus_anchor(ctx);
      if (!anchor) {
        result.clash = format_temp_expr(*tx) + " but " + ctx.s1.id +
                       " has no temporal focus";
        return result;
      }
    } else if (*tx->anchor == ctx.s1.id) {
      anchor = Anchor{ctx.s1.id, AnchorKind::kS1};
    } else if (ctx.tempfoc && *tx->anchor == ctx.tempfoc->id &&
               is_stative(ctx.s1.sem_aspect)) {
      anchor = Anchor{ctx.tempfoc->id, AnchorKind::kTF1};
    } else if (std::find(ctx.thread_members.begin(), ctx.thread_members.end(),
                         *tx->anchor) != ctx.thread_members.end()) {
      anchor = Anchor{*tx->anchor, AnchorKind::kS1};
    } else {
      return result;  // anchor lives in another thread
    }
    AttachmentOption directed{*anchor, RelationNode(tx->relation),
                              OptionSource::kTempExpr};
    if (cue) {
      auto m = lattice.meet(directed.relation, cue->node);
      if (!m) {
        result.clash = "cue '" + cue->token + "' (" + cue->node.name() +
                       ") conflicts with " + format_temp_expr(*tx);
        return result;
      }
      directed.relation = *m;
    }
    result.options.push_back(std::move(directed));
    return result;
  }
  if (!cue) {
    result.options = std::move(options);
    return result;
  }
  for (const AttachmentOption &o : options) {
    if (auto m = lattice.meet(o.relation, cue->node)) {
      AttachmentOption refined = o;
      refined.relation = *m;
      if (!lattice.is_top(cue->node)) refined.source = OptionSource::kCue;
      result.options.push_back(std::move(refined));
    }
  }
  if (result.options.empty() && !options.empty()) {
    std::string opts;
    for (const auto &o : options) {
      opts += (opts.empty() ? "" : ", ") + format_option(o);
    }
    result.clash = "cue '" + cue->token + "' (" + cue->node.name() +
                   ") conflicts with tense/aspect options {" + opts + "}";
  }
  return result;
}

// A perfect clause placed before a simple-tense anchor opens a flashback
// thread instead of continuing the anchor's thread.
inline bool is_flashback(const ClauseAnnotation &anchor,
                         const ClauseAnnotation &s2, CoreRelation relation) {
  return relation == CoreRelation::kPrecede && is_complex(s2.syn_aspect) &&
         !is_complex(anchor.syn_aspect);
}

}  // namespace tempora
