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

// Temporal centering: which open thread a new clause continues.

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tempora/closeness_lexicon.hpp"
#include "tempora/discourse_model.hpp"

namespace tempora {

// Ratings closer than this are treated as ties.
inline constexpr double kRatingTolerance = 1e-9;

struct PreferenceWeights {
  double w_tense = 1.0;  // thread's last clause has the same tense and aspect
  double w_sem = 1.0;    // semantic closeness to the thread's words
  double w_cur = 0.5;    // thread is the one currently followed
  double w_new = 2.0;    // rating of opening a new (flashback) thread
  // Ordered partition of the core relations; earlier tiers are preferred
  // when no explicit marker forces a relation.
  std::vector<std::vector<CoreRelation>> relation_tiers = {
      {CoreRelation::kJustAfter, CoreRelation::kSameEvent,
       CoreRelation::kOverlap},
      {CoreRelation::kPrecede}};

  void validate() const {
    if (w_tense < 0 || w_sem < 0 || w_cur < 0 || w_new < 0) {
      throw InputError("preference weights must be non-negative");
    }
    std::vector<int> count(kCoreRelations.size(), 0);
    for (const auto &tier : relation_tiers) {
      for (CoreRelation r : tier) ++count[static_cast<int>(r)];
    }
    for (int c : count) {
      if (c != 1) {
        throw InputError("relation tiers must partition the core relations");
      }
    }
  }
};

// Tier of a relation. Tiering only applies when the relation is not forced
// by an explicit marker and the new clause is not a perfect; otherwise
// everything is tier 0.
inline int relation_tier(CoreRelation r, const PreferenceWeights &w,
                         bool tiering_active) {
  if (!tiering_active) return 0;
  for (std::size_t i = 0; i < w.relation_tiers.size(); ++i) {
    const auto &tier = w.relation_tiers[i];
    if (std::find(tier.begin(), tier.end(), r) != tier.end()) {
      return static_cast<int>(i);
    }
  }
  return static_cast<int>(w.relation_tiers.size());
}

inline bool parallel_tense(const Thread &t, const ClauseAnnotation &s2) {
  return t.last_tense == s2.tense && t.last_aspect == s2.syn_aspect;
}

inline double rate_thread(const Thread &t, const ClauseAnnotation &s2,
                          const Lexicon &lex, bool is_current,
                          const PreferenceWeights &w) {
  double score = 0.0;
  if (parallel_tense(t, s2)) score += w.w_tense;
  score += w.w_sem * dcu_thread_closeness(lex, s2.words, t.content_words);
  if (is_current) score += w.w_cur;
  return score;
}

// One alternative competing for the new clause: an open thread (by stack
// index) or, with no index, a new thread.
struct Candidate {
  std::optional<std::size_t> thread_index;
  double rating = 0.0;
};

// Indices of the winning candidates: the current thread alone when it is
// among the best rated, otherwise every best-rated candidate.
inline std::vector<std::size_t> select_candidates(
    std::span<const Candidate> candidates, std::size_t current) {
  std::vector<std::size_t> out;
  if (candidates.empty()) return out;
  double best = candidates[0].rating;
  for (const Candidate &c : candidates) best = std::max(best, c.rating);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].rating < best - kRatingTolerance) continue;
    if (candidates[i].thread_index == current) return {i};
    out.push_back(i);
  }
  return out;
}

// Rates every open thread and selects among them.
inline std::vector<std::size_t> select_threads(const TempCenter &center,
                                               const ClauseAnnotation &s2,
                                               const Lexicon &lex,
                                               const PreferenceWeights &w) {
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < center.fwd_center.size(); ++i) {
    candidates.push_back(
        {i, rate_thread(center.fwd_center[i], s2, lex,
                        i == center.bkwd_center, w)});
  }
  std::vector<std::size_t> out;
  for (std::size_t i : select_candidates(candidates, center.bkwd_center)) {
    out.push_back(*candidates[i].thread_index);
  }
  return out;
}

// Appends the clause to open thread `idx`, which becomes current. Threads
// stacked above it are closed.
inline TempCenter attach_to_thread(const TempCenter &center, std::size_t idx,
                                   const ClauseAnnotation &s2) {
  if (idx >= center.fwd_center.size()) {
    throw std::out_of_range("attach_to_thread: no open thread at index " +
                            std::to_string(idx));
  }
  TempCenter next = center;
  next.fwd_center[idx] = extend_thread(next.fwd_center[idx], s2);
  for (std::size_t i = idx + 1; i < next.fwd_center.size(); ++i) {
    next.closed_threads.push_back(next.fwd_center[i]);
  }
  next.fwd_center.resize(idx + 1);
  next.bkwd_center = idx;
  return next;
}

// Pushes a new thread holding the clause. Only perfects (flashback openers)
// or clauses with nowhere else to attach may open a thread.
inline TempCenter start_new_thread(const TempCenter &center,
                                   const ClauseAnnotation &s2,
                                   bool no_feasible_option) {
  if (!is_complex(s2.syn_aspect) && !no_feasible_option) {
    throw std::logic_error("start_new_thread: " + s2.id +
                           " is not a perfect and has feasible attachments");
  }
  TempCenter next = center;
  next.fwd_center.push_back(make_thread(center.next_label(), s2));
  next.bkwd_center = next.fwd_center.size() - 1;
  return next;
}

}  // namespace tempora
