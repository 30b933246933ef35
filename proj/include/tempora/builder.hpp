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

// Incremental construction of temporal/rhetorical structure.
//
// Each new clause is first constrained: for every open thread the feasible
// (anchor, relation) options are computed from tense and aspect, replaced or
// refined by explicit markers, and pruned to the best relation tier. Options
// that place a perfect before a simple-tense clause become flashback
// threads. Preferences then pick among the threads that still have options
// (plus the flashback alternative): the current thread wins any tie it is
// part of, otherwise every best-rated alternative is kept.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "tempora/centering.hpp"
#include "tempora/constraint_engine.hpp"
#include "tempora/discourse_model.hpp"
#include "tempora/resources.hpp"

namespace tempora {

enum class Mode { kBest, kEnumerate, kUnderspec };
enum class AttachPolicy { kPreferred, kAll };

inline std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::kBest: return "best";
    case Mode::kEnumerate: return "enumerate";
    case Mode::kUnderspec: return "underspec";
  }
  return "???";
}

inline std::optional<Mode> parse_mode(std::string_view s) {
  for (Mode m : {Mode::kBest, Mode::kEnumerate, Mode::kUnderspec}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

// Every reading died at some clause because explicit markers clashed.
class ParseFailure : public std::runtime_error {
 public:
  ParseFailure(std::string clause, std::vector<std::string> clashes)
      : std::runtime_error(build_message(clause, clashes)),
        clause_(std::move(clause)),
        clashes_(std::move(clashes)) {}

  const std::string &clause() const { return clause_; }
  const std::vector<std::string> &clashes() const { return clashes_; }

 private:
  static std::string build_message(const std::string &clause,
                                   const std::vector<std::string> &clashes) {
    std::string msg = "no consistent reading at " + clause;
    for (const auto &c : clashes) msg += "; " + c;
    return msg;
  }

  std::string clause_;
  std::vector<std::string> clashes_;
};

struct AttachOutcome {
  std::vector<AnalysisState> successors;
  std::vector<std::string> clashes;
};

namespace internal {

inline const ClauseAnnotation &clause_of(const AnalysisState &s,
                                         std::string_view id) {
  const Dcu *d = s.find(id);
  if (d == nullptr) {
    throw std::logic_error("state has no eventuality " + std::string(id));
  }
  return d->annotation;
}

inline AttachmentContext context_for(const AnalysisState &s, const Thread &t) {
  AttachmentContext ctx;
  ctx.s1 = clause_of(s, t.members.back());
  if (t.tempfoc) ctx.tempfoc = clause_of(s, *t.tempfoc);
  ctx.thread_members = t.members;
  return ctx;
}

inline std::string format_rating(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", r);
  return buf;
}

struct Branch {
  AttachmentOption option;
  CoreRelation core;
  int tier;
};

}  // namespace internal

// Extends `state` with clause `s2`. With AttachPolicy::kPreferred only the
// preferred alternatives are extended; with kAll every constrained option
// on every open thread yields a successor.
inline AttachOutcome attach(const AnalysisState &state,
                            const ClauseAnnotation &s2, const Config &cfg,
                            AttachPolicy policy = AttachPolicy::kPreferred) {
  using internal::Branch;
  const Resources &res = cfg.resources;
  const AnalysisOptions &opts = cfg.options;

  validate_clause(s2, res.cues);
  if (state.find(s2.id)) {
    throw InputError("duplicate clause id '" + s2.id + "'");
  }
  if (s2.temp_expr && s2.temp_expr->anchor &&
      *s2.temp_expr->anchor != kFocusToken &&
      !state.find(*s2.temp_expr->anchor)) {
    throw InputError(s2.id + ": temporal expression anchor '" +
                     *s2.temp_expr->anchor +
                     "' is not an earlier eventuality");
  }

  std::optional<CueMarker> cue;
  if (s2.cue) cue = res.cues.marker(*s2.cue);
  const bool forced =
      s2.temp_expr.has_value() || (cue && !res.lattice.is_top(cue->node));
  const bool tiering = !forced && !is_complex(s2.syn_aspect);

  const TempCenter &center = state.center;
  std::vector<std::vector<Branch>> continuations(center.fwd_center.size());
  std::vector<Branch> flashbacks;
  std::vector<std::string> notes;
  AttachOutcome outcome;
  bool any_default = false;

  for (std::size_t idx = 0; idx < center.fwd_center.size(); ++idx) {
    const Thread &thread = center.fwd_center[idx];
    const std::string tname = thread_name(thread.label);
    AttachmentContext ctx = internal::context_for(state, thread);
    auto defaults =
        feasible_options(ctx, s2, res.table, opts.allow_marginal);
    any_default = any_default || !defaults.empty();

    std::string listing;
    for (const auto &o : defaults) {
      listing += (listing.empty() ? "" : " ") + format_option(o);
    }
    notes.push_back(s2.id + ": " + tname + " " +
                    (is_table_case(ctx.s1, s2) ? "table" : "bullets") + " {" +
                    listing + "}");

    ExplicitResult ex =
        apply_explicit(ctx, std::move(defaults), cue, s2.temp_expr,
                       res.lattice);
    if (ex.clash) {
      outcome.clashes.push_back(*ex.clash);
      notes.push_back(s2.id + ": " + tname + " clash: " + *ex.clash);
    }
    if (ex.options.empty()) continue;
    if (s2.temp_expr) {
      notes.push_back(s2.id + ": " + tname + " " +
                      format_temp_expr(*s2.temp_expr) + " overrides defaults");
    } else if (cue) {
      notes.push_back(s2.id + ": " + tname + " cue '" + cue->token + "' -> " +
                      cue->node.name());
    }

    std::vector<Branch> branches;
    int best_tier = -1;
    for (const AttachmentOption &o : ex.options) {
      CoreRelation core = *res.lattice.temporal_projection(o.relation);
      int tier = relation_tier(core, opts.weights, tiering);
      if (best_tier < 0 || tier < best_tier) best_tier = tier;
      branches.push_back({o, core, tier});
      if (o.anchor.kind == AnchorKind::kTF1) {
        notes.push_back(s2.id + ": " + tname + " " + format_option(o) +
                        " anchors on the temporal focus");
      }
    }
    for (const Branch &b : branches) {
      if (opts.tier_prune && b.tier > best_tier) {
        notes.push_back(s2.id + ": " + tname + " tier-prune drops " +
                        format_option(b.option));
        continue;
      }
      const ClauseAnnotation &anchor =
          internal::clause_of(state, b.option.anchor.id);
      if (is_flashback(anchor, s2, b.core)) {
        flashbacks.push_back(b);
      } else {
        continuations[idx].push_back(b);
      }
    }
  }

  std::vector<Candidate> candidates;
  std::string ratings;
  for (std::size_t idx = 0; idx < continuations.size(); ++idx) {
    if (continuations[idx].empty()) continue;
    double r = rate_thread(center.fwd_center[idx], s2, res.lexicon,
                           idx == center.bkwd_center, opts.weights);
    candidates.push_back({idx, r});
    ratings += " " + thread_name(center.fwd_center[idx].label) + "=" +
               internal::format_rating(r);
  }
  if (!flashbacks.empty()) {
    candidates.push_back({std::nullopt, opts.weights.w_new});
    ratings += " new=" + internal::format_rating(opts.weights.w_new);
  }
  if (!ratings.empty()) notes.push_back(s2.id + ": ratings" + ratings);

  auto make_successor = [&](double rating) {
    AnalysisState next = state;
    next.score += rating;
    next.log.insert(next.log.end(), notes.begin(), notes.end());
    return next;
  };

  if (candidates.empty()) {
    // Nothing to attach to: the clause opens a thread of its own, unless an
    // explicit marker asked for a relation that cannot hold.
    if (!any_default && !s2.temp_expr) {
      AnalysisState next = make_successor(opts.weights.w_new);
      next.center = start_new_thread(center, s2, true);
      Dcu d;
      d.annotation = s2;
      d.thread = next.center.fwd_center.back().label;
      d.action = ThreadAction::kNewThread;
      next.log.push_back(s2.id + ": no feasible attachment, opens " +
                         thread_name(d.thread));
      next.dcus.push_back(std::move(d));
      outcome.successors.push_back(std::move(next));
    }
    return outcome;
  }

  std::vector<std::size_t> selected;
  if (policy == AttachPolicy::kAll) {
    for (std::size_t i = 0; i < candidates.size(); ++i) selected.push_back(i);
  } else {
    selected = select_candidates(candidates, center.bkwd_center);
  }

  for (std::size_t ci : selected) {
    const Candidate &cand = candidates[ci];
    const auto &branches =
        cand.thread_index ? continuations[*cand.thread_index] : flashbacks;
    for (const Branch &b : branches) {
      AnalysisState next = make_successor(cand.rating);
      Dcu d;
      d.annotation = s2;
      d.rhet_reln = b.option.relation;
      d.anchor = b.option.anchor;
      d.temp_relns.push_back({s2.id, b.core, b.option.anchor.id});
      d.tier = b.tier;
      if (cand.thread_index) {
        next.center = attach_to_thread(center, *cand.thread_index, s2);
        d.thread = next.center.fwd_center[*cand.thread_index].label;
        d.action = ThreadAction::kContinue;
        next.log.push_back(s2.id + ": " + format_option(b.option) +
                           ", continues " + thread_name(d.thread));
      } else {
        next.center = start_new_thread(center, s2, false);
        d.thread = next.center.fwd_center.back().label;
        d.action = ThreadAction::kFlashback;
        next.log.push_back(s2.id + ": " + format_option(b.option) +
                           ", flashback opens " + thread_name(d.thread));
      }
      next.dcus.push_back(std::move(d));
      outcome.successors.push_back(std::move(next));
    }
  }
  return outcome;
}

// Ordering key of a reading's non-initial sites: thread, tier, narrative
// default first (overlap for states, just_after otherwise), relation name,
// anchor.
inline auto reading_key(const AnalysisState &s) {
  using Site = std::tuple<int, int, int, std::string, int, std::string>;
  std::vector<Site> key;
  for (std::size_t i = 1; i < s.dcus.size(); ++i) {
    const Dcu &d = s.dcus[i];
    if (!d.rhet_reln || d.temp_relns.empty()) {
      key.emplace_back(d.thread, d.tier, 2, "", 0, "");
      continue;
    }
    CoreRelation core = d.temp_relns.front().relation;
    CoreRelation preferred = is_stative(d.annotation.sem_aspect)
                                 ? CoreRelation::kOverlap
                                 : CoreRelation::kJustAfter;
    key.emplace_back(d.thread, d.tier, core == preferred ? 0 : 1,
                     d.rhet_reln->name(), static_cast<int>(d.anchor->kind),
                     d.anchor->id);
  }
  return key;
}

// Sorts by non-increasing score, then by reading_key.
inline void sort_readings(std::vector<AnalysisState> &readings) {
  auto quantized = [](double score) { return std::llround(score * 1e6); };
  std::stable_sort(readings.begin(), readings.end(),
                   [&](const AnalysisState &a, const AnalysisState &b) {
                     auto qa = quantized(a.score), qb = quantized(b.score);
                     if (qa != qb) return qa > qb;
                     return reading_key(a) < reading_key(b);
                   });
}

// The single least specific node covering the relations that survive at one
// attachment site, with the candidate anchors.
struct UnderspecifiedSite {
  std::string id;
  std::optional<RelationNode> node;
  std::vector<RelationNode> relations;           // distinct, first-seen order
  std::vector<std::pair<Anchor, int>> anchors;   // with multiplicity
  int unanchored = 0;  // readings where the clause opened its own thread
};

struct UnderspecifiedStructure {
  std::vector<UnderspecifiedSite> sites;
};

inline UnderspecifiedStructure underspecify(
    std::span<const AnalysisState> readings, const Lattice &lattice) {
  if (readings.empty()) {
    throw std::invalid_argument("underspecify: no readings");
  }
  const std::size_t n = readings.front().dcus.size();
  for (const AnalysisState &r : readings) {
    bool same = r.dcus.size() == n;
    for (std::size_t i = 0; same && i < n; ++i) {
      same = r.dcus[i].annotation.id == readings.front().dcus[i].annotation.id;
    }
    if (!same) {
      throw std::invalid_argument(
          "underspecify: readings cover different discourses");
    }
  }
  UnderspecifiedStructure out;
  for (std::size_t i = 1; i < n; ++i) {
    UnderspecifiedSite site;
    site.id = readings.front().dcus[i].annotation.id;
    for (const AnalysisState &r : readings) {
      const Dcu &d = r.dcus[i];
      if (!d.rhet_reln) {
        ++site.unanchored;
        continue;
      }
      site.node =
          site.node ? lattice.join(*site.node, *d.rhet_reln) : *d.rhet_reln;
      if (std::find(site.relations.begin(), site.relations.end(),
                    *d.rhet_reln) == site.relations.end()) {
        site.relations.push_back(*d.rhet_reln);
      }
      auto it = std::find_if(site.anchors.begin(), site.anchors.end(),
                             [&](const auto &p) { return p.first == *d.anchor; });
      if (it == site.anchors.end()) {
        site.anchors.emplace_back(*d.anchor, 1);
      } else {
        ++it->second;
      }
    }
    out.sites.push_back(std::move(site));
  }
  return out;
}

struct AnalysisResult {
  Mode mode = Mode::kBest;
  std::vector<AnalysisState> readings;
  std::optional<UnderspecifiedStructure> underspec;
  std::vector<std::string> warnings;
};

// Runs the whole discourse. Best and underspec modes follow the preferences
// at every clause and keep the highest-scoring readings; enumerate mode
// keeps every constrained reading, best first.
namespace internal {

inline std::vector<AnalysisState> grow_readings(
    std::span<const ClauseAnnotation> discourse, const Config &cfg,
    AttachPolicy policy) {
  std::vector<AnalysisState> states = {
      new_discourse(discourse.front(), cfg.resources.cues)};
  for (std::size_t i = 1; i < discourse.size(); ++i) {
    std::vector<AnalysisState> next;
    std::vector<std::string> clashes;
    for (const AnalysisState &s : states) {
      AttachOutcome out = attach(s, discourse[i], cfg, policy);
      for (auto &succ : out.successors) next.push_back(std::move(succ));
      for (auto &c : out.clashes) {
        if (std::find(clashes.begin(), clashes.end(), c) == clashes.end()) {
          clashes.push_back(std::move(c));
        }
      }
    }
    if (next.empty()) {
      if (clashes.empty()) {
        clashes.push_back("no thread offers an attachment for " +
                          discourse[i].id);
      }
      throw ParseFailure(discourse[i].id, std::move(clashes));
    }
    states = std::move(next);
  }
  return states;
}

}  // namespace internal

inline AnalysisResult analyze(std::span<const ClauseAnnotation> discourse,
                              const Config &cfg, Mode mode) {
  if (discourse.empty()) throw InputError("empty discourse");
  validate_discourse(discourse, cfg.resources.cues);
  const AttachPolicy policy =
      mode == Mode::kEnumerate ? AttachPolicy::kAll : AttachPolicy::kPreferred;

  std::vector<std::string> warnings;
  std::vector<AnalysisState> states;
  try {
    states = internal::grow_readings(discourse, cfg, policy);
  } catch (const ParseFailure &e) {
    if (policy == AttachPolicy::kAll) throw;
    // Preferred threads ran into a dead end; rank every surviving reading.
    states = internal::grow_readings(discourse, cfg, AttachPolicy::kAll);
    warnings.push_back("preferred attachments fail at " + e.clause() +
                       "; best readings taken from all surviving readings");
  }

  sort_readings(states);
  if (policy == AttachPolicy::kPreferred) {
    const double best = states.front().score;
    std::erase_if(states, [best](const AnalysisState &s) {
      return s.score < best - kRatingTolerance;
    });
  }

  AnalysisResult result;
  result.mode = mode;
  result.readings = std::move(states);
  result.warnings = std::move(warnings);
  const TempCenter &top = result.readings.front().center;
  for (std::size_t i = 1; i < top.fwd_center.size(); ++i) {
    const Thread &t = top.fwd_center[i];
    result.warnings.push_back("thread " + thread_name(t.label) + " (" +
                              t.members.front() +
                              ") is left open at the end of the discourse");
  }
  if (mode == Mode::kUnderspec) {
    result.underspec = underspecify(result.readings, cfg.resources.lattice);
  }
  return result;
}

}  // namespace tempora
