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

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "test_util.h"

namespace tempora {
namespace {

using testing::past;
using testing::past_perfect;
using testing::stock_config;
using S = SemanticAspect;

TEST(EnumTest, RoundTrips) {
  for (Tense t : {Tense::kPast, Tense::kPresent, Tense::kFuture}) {
    EXPECT_EQ(parse_tense(to_string(t)), t);
  }
  for (auto a : {SyntacticAspect::kSimple, SyntacticAspect::kPerfect,
                 SyntacticAspect::kProgressive,
                 SyntacticAspect::kPerfectProgressive}) {
    EXPECT_EQ(parse_syntactic_aspect(to_string(a)), a);
  }
  for (S s : {S::kEvent, S::kState, S::kActivity}) {
    EXPECT_EQ(parse_semantic_aspect(to_string(s)), s);
  }
  EXPECT_EQ(parse_tense("present"), std::nullopt);
  EXPECT_EQ(parse_syntactic_aspect("perfect"), std::nullopt);
  EXPECT_EQ(parse_semantic_aspect("process"), std::nullopt);
  for (CoreRelation r : kCoreRelations) {
    EXPECT_EQ(parse_core_relation(to_string(r)), r);
  }
}

TEST(EnumTest, AspectPredicates) {
  EXPECT_TRUE(is_complex(SyntacticAspect::kPerfect));
  EXPECT_TRUE(is_complex(SyntacticAspect::kPerfectProgressive));
  EXPECT_FALSE(is_complex(SyntacticAspect::kProgressive));
  EXPECT_TRUE(is_atelic(S::kState));
  EXPECT_TRUE(is_atelic(S::kActivity));
  EXPECT_FALSE(is_atelic(S::kEvent));
  EXPECT_FALSE(is_focus_candidate(S::kState));
}

TEST(NewDiscourseTest, EventStartsThreadWithFocus) {
  auto s = new_discourse(past("e1", S::kEvent, {"ring", "bell"}),
                         stock_config().resources.cues);
  ASSERT_EQ(s.center.fwd_center.size(), 1u);
  EXPECT_EQ(s.center.bkwd_center, 0u);
  const Thread &t = s.center.fwd_center[0];
  EXPECT_EQ(t.members, std::vector<std::string>{"e1"});
  EXPECT_EQ(t.tempfoc, "e1");
  EXPECT_EQ(t.content_words, (std::set<std::string>{"bell", "ring"}));
  EXPECT_EQ(s.score, 0.0);
  EXPECT_TRUE(eventuality_order(s).empty());
  EXPECT_FALSE(s.dcus[0].rhet_reln);
  EXPECT_FALSE(s.dcus[0].anchor);
}

TEST(NewDiscourseTest, StateHasNoFocus) {
  auto s = new_discourse(past("e1", S::kState), stock_config().resources.cues);
  EXPECT_EQ(s.center.fwd_center[0].tempfoc, std::nullopt);
}

TEST(NewDiscourseTest, RejectsInvalidClause) {
  auto c = past("e1", S::kEvent);
  c.cue = "however";
  EXPECT_THROW(new_discourse(c, stock_config().resources.cues), InputError);
  EXPECT_THROW(new_discourse(past("", S::kEvent), stock_config().resources.cues),
               InputError);
  EXPECT_THROW(new_discourse(past("tf", S::kEvent), stock_config().resources.cues),
               InputError);
}

TEST(ValidateTest, DiscourseLevelErrors) {
  const auto &cues = stock_config().resources.cues;
  std::vector<ClauseAnnotation> dup = {past("e1", S::kEvent),
                                       past("e1", S::kEvent)};
  EXPECT_THROW(validate_discourse(dup, cues), InputError);

  auto first = past("e1", S::kEvent);
  first.temp_expr = TempExprDirective{CoreRelation::kPrecede, std::nullopt};
  std::vector<ClauseAnnotation> leading = {first};
  EXPECT_THROW(validate_discourse(leading, cues), InputError);

  auto later = past("e2", S::kEvent);
  later.temp_expr = TempExprDirective{CoreRelation::kPrecede, "e3"};
  std::vector<ClauseAnnotation> forward = {past("e1", S::kEvent), later,
                                           past("e3", S::kEvent)};
  EXPECT_THROW(validate_discourse(forward, cues), InputError);

  later.temp_expr->anchor = "tf";
  std::vector<ClauseAnnotation> ok = {past("e1", S::kEvent), later};
  EXPECT_NO_THROW(validate_discourse(ok, cues));
}

TEST(EventualityOrderTest, Examples) {
  const Config &cfg = stock_config();
  auto j1 = analyze(testing::example("j1"), cfg, Mode::kBest);
  EXPECT_EQ(eventuality_order(j1.readings[0]),
            (std::vector<TemporalRelation>{
                {"e2", CoreRelation::kPrecede, "e1"}}));
  EXPECT_EQ(describe(eventuality_order(j1.readings[0])[0]), "e2 precedes e1");
  auto vvg = analyze(testing::example("vvg_a"), cfg, Mode::kBest);
  EXPECT_EQ(testing::relation_lines(vvg.readings[0]),
            (std::vector<std::string>{"e2 precede e1", "e3 just_after e1"}));
}

TEST(DescribeTest, Verbs) {
  EXPECT_EQ(describe({"a", CoreRelation::kJustAfter, "b"}), "a just-after b");
  EXPECT_EQ(describe({"a", CoreRelation::kOverlap, "b"}), "a overlaps b");
  EXPECT_EQ(describe({"a", CoreRelation::kSameEvent, "b"}), "a same-event b");
}

// Attaching every clause of every small discourse: the parent state never
// changes, focus equals the last event/activity, every eventuality lives in
// exactly one thread, and no pair is related in both directions.
TEST(StateInvariantsTest, ReplayOverAlphabet) {
  const Config &cfg = stock_config();
  for (const auto &d : testing::alphabet_discourses(3)) {
    std::vector<AnalysisState> states = {
        new_discourse(d.front(), cfg.resources.cues)};
    for (std::size_t i = 1; i < d.size(); ++i) {
      std::vector<AnalysisState> next;
      for (const auto &s : states) {
        const std::size_t before = state_hash(s);
        const AnalysisState copy = s;
        auto out = attach(s, d[i], cfg, AttachPolicy::kAll);
        EXPECT_EQ(state_hash(s), before);
        EXPECT_EQ(s, copy);
        for (auto &succ : out.successors) next.push_back(std::move(succ));
      }
      states = std::move(next);
    }
    for (const auto &s : states) {
      std::map<std::string, int> homes;
      auto visit = [&](const Thread &t) {
        ASSERT_FALSE(t.members.empty());
        std::optional<std::string> focus;
        for (const auto &m : t.members) {
          ++homes[m];
          if (s.find(m)->annotation.sem_aspect != S::kState) focus = m;
        }
        EXPECT_EQ(t.tempfoc, focus);
      };
      for (const auto &t : s.center.fwd_center) visit(t);
      for (const auto &t : s.center.closed_threads) visit(t);
      EXPECT_LT(s.center.bkwd_center, s.center.fwd_center.size());
      for (const auto &dcu : s.dcus) EXPECT_EQ(homes[dcu.annotation.id], 1);
      std::set<std::pair<std::string, std::string>> pairs;
      for (const auto &r : eventuality_order(s)) {
        EXPECT_FALSE(pairs.count({r.to, r.from}));
        pairs.insert({r.from, r.to});
      }
    }
  }
}

TEST(StateHashTest, DistinguishesStates) {
  const Config &cfg = stock_config();
  auto all = analyze(testing::example("vvg_a"), cfg, Mode::kEnumerate);
  std::set<std::size_t> hashes;
  for (const auto &s : all.readings) hashes.insert(state_hash(s));
  EXPECT_EQ(hashes.size(), all.readings.size());
  EXPECT_EQ(state_hash(all.readings[0]), state_hash(AnalysisState(all.readings[0])));
}

TEST(TempCenterTest, NextLabelCountsClosedThreads) {
  TempCenter c;
  c.fwd_center.push_back(make_thread(1, past("e1", S::kEvent)));
  c.closed_threads.push_back(make_thread(2, past_perfect("e2", S::kEvent)));
  EXPECT_EQ(c.next_label(), 3);
}

}  // namespace
}  // namespace tempora
