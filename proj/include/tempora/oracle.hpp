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

// Brute-force reference for the builder.
//
// The unconstrained space assigns one of the four core relations to every
// non-initial clause, without committing to an anchor, plus one extra
// reading (for discourses of three or more clauses) in which the last clause
// starts a thread of its own and earlier sites are left open. Filtering
// realizes each skeleton against every open thread and every thread member,
// keeping what passes the feasibility, explicit-marker and tier tests.
//
// This file reads the same data (matrix, lattice, cues, weights) as the
// builder but does not call the constraint engine, the centering code or the
// builder; its predicates are written out separately so that agreement
// between the two is meaningful.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempora/builder.hpp"
#include "tempora/discourse_model.hpp"
#include "tempora/resources.hpp"

namespace tempora::oracle {

struct OracleSite {
  std::string id;
  std::optional<RelationNode> relation;  // core in skeletons, refined later
  std::optional<Anchor> anchor;
  std::optional<ThreadAction> action;    // nullopt until realized

  auto operator<=>(const OracleSite &) const = default;
};

using OracleReading = std::vector<OracleSite>;

inline void canonicalize(std::vector<OracleReading> &readings) {
  std::sort(readings.begin(), readings.end());
  readings.erase(std::unique(readings.begin(), readings.end()),
                 readings.end());
}

inline std::vector<OracleReading> enumerate_unconstrained(
    std::span<const ClauseAnnotation> discourse) {
  std::vector<OracleReading> out;
  if (discourse.empty()) return out;
  const std::size_t sites = discourse.size() - 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < sites; ++i) total *= kCoreRelations.size();
  for (std::size_t code = 0; code < total; ++code) {
    OracleReading r;
    std::size_t c = code;
    for (std::size_t i = 1; i < discourse.size(); ++i) {
      r.push_back({discourse[i].id, RelationNode(kCoreRelations[c % 4]),
                   std::nullopt, std::nullopt});
      c /= 4;
    }
    out.push_back(std::move(r));
  }
  if (discourse.size() >= 3) {
    OracleReading r;
    for (std::size_t i = 1; i + 1 < discourse.size(); ++i) {
      r.push_back({discourse[i].id, std::nullopt, std::nullopt, std::nullopt});
    }
    r.push_back({discourse.back().id, std::nullopt, std::nullopt,
                 ThreadAction::kNewThread});
    out.push_back(std::move(r));
  }
  canonicalize(out);
  return out;
}

struct FilterOptions {
  bool apply_constraints = true;
};

namespace internal {

struct World {
  std::vector<std::vector<std::size_t>> open;  // clause indices per thread
  OracleReading sites;
};

class Realizer {
 public:
  Realizer(std::span<const ClauseAnnotation> discourse, const Config &cfg)
      : d_(discourse), cfg_(cfg) {}

  std::vector<OracleReading> realize(const OracleReading &skeleton) const {
    World start;
    start.open.push_back({0});
    std::vector<World> frontier = {start};
    for (std::size_t i = 1; i < d_.size(); ++i) {
      const OracleSite &want = skeleton[i - 1];
      std::vector<World> next;
      for (const World &w : frontier) grow(w, i, want, next);
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
    std::vector<OracleReading> out;
    for (World &w : frontier) out.push_back(std::move(w.sites));
    return out;
  }

 private:
  const ClauseAnnotation &at(std::size_t i) const { return d_[i]; }

  // Most recent event or activity in a thread.
  std::optional<std::size_t> focus(const std::vector<std::size_t> &t) const {
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
      if (at(*it).sem_aspect != SemanticAspect::kState) return *it;
    }
    return std::nullopt;
  }

  static bool perfect(const ClauseAnnotation &c) {
    return c.syn_aspect == SyntacticAspect::kPerfect ||
           c.syn_aspect == SyntacticAspect::kPerfectProgressive;
  }

  // Tense/aspect licensing of `rel` between clause `i` and member `m` of
  // thread `t`, ignoring explicit markers.
  bool licensed(const std::vector<std::size_t> &t, std::size_t m,
                CoreRelation rel, std::size_t i) const {
    const ClauseAnnotation &last = at(t.back());
    const ClauseAnnotation &s2 = at(i);
    const bool last_state = last.sem_aspect == SemanticAspect::kState;
    const auto tf = focus(t);
    const bool is_last = m == t.back();
    const bool is_tf1 = !is_last && last_state && tf && m == *tf;
    if (!is_last && !is_tf1) return false;

    const bool matrix = s2.tense == Tense::kPast &&
                        s2.syn_aspect == SyntacticAspect::kSimple &&
                        s2.sem_aspect == SemanticAspect::kEvent &&
                        last.tense == Tense::kPast;
    if (matrix) {
      auto allow = cfg_.resources.table.cell(
          perfect(last) ? TenseGroup::kPastPerfect : TenseGroup::kPast,
          last.sem_aspect, is_tf1 ? AnchorKind::kTF1 : AnchorKind::kS1, rel);
      return allow && (*allow == Allowance::kYes ||
                       (*allow == Allowance::kMarginal &&
                        cfg_.options.allow_marginal));
    }

    const SemanticAspect x = last.sem_aspect, y = s2.sem_aspect;
    using S = SemanticAspect;
    switch (rel) {
      case CoreRelation::kOverlap:
        return is_last && (x == S::kState || y == S::kState);
      case CoreRelation::kJustAfter: {
        // Relates to the focus of the last clause: itself unless stative.
        bool right_anchor = last_state ? is_tf1 : is_last;
        if (!right_anchor) return false;
        if (y == S::kEvent && !perfect(s2)) return true;
        if (y == S::kEvent && perfect(s2) && perfect(last)) return true;
        if (x == S::kEvent && y != S::kEvent) return true;
        return x == S::kState && y == S::kActivity && !perfect(s2);
      }
      case CoreRelation::kPrecede:
        if (!is_last) return false;
        if (y == S::kEvent) return true;
        return x != S::kActivity && y == S::kState && perfect(s2) &&
               s2.tense == Tense::kPast;
      case CoreRelation::kSameEvent:
        if (!is_last) return false;
        if (x == S::kEvent) return !(y == S::kEvent && perfect(s2) &&
                                     !perfect(last));
        if (x == S::kActivity) return y != S::kEvent;
        return y == S::kState && (!perfect(s2) || perfect(last));
    }
    return false;
  }

  bool forced(std::size_t i) const {
    const ClauseAnnotation &s2 = at(i);
    if (s2.temp_expr) return true;
    if (!s2.cue) return false;
    return cfg_.resources.cues.cue_relation(*s2.cue).name() != kTopName;
  }

  int tier(CoreRelation rel, std::size_t i) const {
    if (forced(i) || perfect(at(i))) return 0;
    const auto &tiers = cfg_.options.weights.relation_tiers;
    for (std::size_t k = 0; k < tiers.size(); ++k) {
      for (CoreRelation r : tiers[k]) {
        if (r == rel) return static_cast<int>(k);
      }
    }
    return static_cast<int>(tiers.size());
  }

  // Relation node and anchor kind for (thread, member, relation) once
  // explicit markers are applied, or nullopt when the combination fails.
  std::optional<std::pair<RelationNode, AnchorKind>> marked(
      const std::vector<std::size_t> &t, std::size_t m, CoreRelation rel,
      std::size_t i) const {
    const ClauseAnnotation &s2 = at(i);
    const ClauseAnnotation &last = at(t.back());
    const bool last_state = last.sem_aspect == SemanticAspect::kState;
    const auto tf = focus(t);
    const AnchorKind kind = (m != t.back() && last_state && tf && m == *tf)
                                ? AnchorKind::kTF1
                                : AnchorKind::kS1;
    RelationNode node(rel);
    if (s2.temp_expr) {
      if (rel != s2.temp_expr->relation) return std::nullopt;
      const auto &a = s2.temp_expr->anchor;
      bool hit;
      if (!a) {
        hit = m == t.back();
      } else if (*a == kFocusToken) {
        hit = last_state ? (tf && m == *tf) : m == t.back();
      } else {
        hit = at(m).id == *a;
      }
      if (!hit) return std::nullopt;
    } else if (!licensed(t, m, rel, i)) {
      return std::nullopt;
    }
    if (s2.cue) {
      RelationNode cue = cfg_.resources.cues.cue_relation(*s2.cue);
      RelationNode met = cfg_.resources.lattice.meet_total(node, cue);
      if (met.name() == kBottomName) return std::nullopt;
      node = met;
    }
    return std::make_pair(node, kind);
  }

  bool passes_tier(const std::vector<std::size_t> &t, CoreRelation rel,
                   std::size_t i) const {
    if (!cfg_.options.tier_prune) return true;
    int mine = tier(rel, i);
    for (std::size_t m : t) {
      for (CoreRelation other : kCoreRelations) {
        if (tier(other, i) < mine && marked(t, m, other, i)) return false;
      }
    }
    return true;
  }

  bool anything_licensed(const World &w, std::size_t i) const {
    for (const auto &t : w.open) {
      for (std::size_t m : t) {
        for (CoreRelation r : kCoreRelations) {
          if (licensed(t, m, r, i)) return true;
        }
      }
    }
    return false;
  }

  void grow(const World &w, std::size_t i, const OracleSite &want,
            std::vector<World> &out) const {
    const ClauseAnnotation &s2 = at(i);
    if (want.action == ThreadAction::kNewThread) {
      if (!s2.temp_expr && !anything_licensed(w, i)) {
        World next = w;
        next.open.push_back({i});
        next.sites.push_back(
            {s2.id, std::nullopt, std::nullopt, ThreadAction::kNewThread});
        out.push_back(std::move(next));
      }
      return;
    }
    for (std::size_t k = 0; k < w.open.size(); ++k) {
      const auto &t = w.open[k];
      for (std::size_t m : t) {
        for (CoreRelation rel : kCoreRelations) {
          if (want.relation && want.relation->name() != to_string(rel)) {
            continue;
          }
          auto hit = marked(t, m, rel, i);
          if (!hit || !passes_tier(t, rel, i)) continue;
          World next = w;
          const bool back = rel == CoreRelation::kPrecede && perfect(s2) &&
                            !perfect(at(m));
          if (back) {
            next.open.push_back({i});
          } else {
            next.open[k].push_back(i);
            next.open.resize(k + 1);
          }
          next.sites.push_back(
              {s2.id, hit->first, Anchor{at(m).id, hit->second},
               back ? ThreadAction::kFlashback : ThreadAction::kContinue});
          out.push_back(std::move(next));
        }
      }
    }
  }

  std::span<const ClauseAnnotation> d_;
  const Config &cfg_;
};

}  // namespace internal

inline std::vector<OracleReading> filter_constrained(
    const std::vector<OracleReading> &readings,
    std::span<const ClauseAnnotation> discourse, const Config &cfg,
    FilterOptions options = {}) {
  if (!options.apply_constraints) return readings;
  internal::Realizer realizer(discourse, cfg);
  std::vector<OracleReading> out;
  for (const OracleReading &skeleton : readings) {
    auto realized = realizer.realize(skeleton);
    out.insert(out.end(), realized.begin(), realized.end());
  }
  canonicalize(out);
  return out;
}

// The builder's view of a reading, in oracle form.
inline OracleReading from_state(const AnalysisState &s) {
  OracleReading r;
  for (std::size_t i = 1; i < s.dcus.size(); ++i) {
    const Dcu &d = s.dcus[i];
    r.push_back({d.annotation.id, d.rhet_reln, d.anchor, d.action});
  }
  return r;
}

inline std::string format_reading(const OracleReading &r) {
  std::string out;
  for (const OracleSite &s : r) {
    if (!out.empty()) out += ", ";
    out += s.id + " ";
    if (s.action == ThreadAction::kNewThread) {
      out += "new-thread";
      continue;
    }
    out += s.relation ? s.relation->name() : "*";
    if (s.anchor) {
      out += "@" + s.anchor->id;
      if (s.anchor->kind == AnchorKind::kTF1) out += "(TF1)";
    }
    if (s.action == ThreadAction::kFlashback) out += " flashback";
  }
  return out.empty() ? "(single clause)" : out;
}

// Counts at each stage, for the `oracle` command.
struct OracleReport {
  std::size_t unconstrained = 0;
  std::vector<OracleReading> constrained;
  std::size_t preferred = 0;
  bool builder_agrees = false;
  // Filled when tier pruning is disabled: readings that pruning would drop.
  std::vector<OracleReading> tier_delta;
};

inline OracleReport run_oracle(std::span<const ClauseAnnotation> discourse,
                               const Config &cfg) {
  validate_discourse(discourse, cfg.resources.cues);
  OracleReport report;
  auto all = enumerate_unconstrained(discourse);
  report.unconstrained = all.size();
  report.constrained = filter_constrained(all, discourse, cfg);

  std::vector<OracleReading> built;
  try {
    for (const auto &s : analyze(discourse, cfg, Mode::kEnumerate).readings) {
      built.push_back(from_state(s));
    }
    report.preferred = analyze(discourse, cfg, Mode::kBest).readings.size();
  } catch (const ParseFailure &) {
    built.clear();
    report.preferred = 0;
  }
  std::vector<OracleReading> sorted = built;
  canonicalize(sorted);
  report.builder_agrees =
      sorted.size() == built.size() && sorted == report.constrained;

  if (!cfg.options.tier_prune) {
    Config pruned = cfg;
    pruned.options.tier_prune = true;
    auto kept = filter_constrained(all, discourse, pruned);
    for (const auto &r : report.constrained) {
      if (!std::binary_search(kept.begin(), kept.end(), r)) {
        report.tier_delta.push_back(r);
      }
    }
  }
  return report;
}

}  // namespace tempora::oracle
