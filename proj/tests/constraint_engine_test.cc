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

#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "test_util.h"

namespace tempora {
namespace {

using testing::past;
using testing::past_perfect;
using testing::stock_config;
using S = SemanticAspect;

const FeasibilityTable &table() { return stock_config().resources.table; }
const Lattice &lattice() { return stock_config().resources.lattice; }

AttachmentContext context(ClauseAnnotation s1,
                          std::optional<ClauseAnnotation> focus = {}) {
  AttachmentContext ctx;
  ctx.s1 = std::move(s1);
  ctx.tempfoc = std::move(focus);
  if (ctx.tempfoc) ctx.thread_members.push_back(ctx.tempfoc->id);
  ctx.thread_members.push_back(ctx.s1.id);
  return ctx;
}

// "rel@kind" strings for an option set.
std::set<std::string> summary(const std::vector<AttachmentOption> &opts) {
  std::set<std::string> out;
  for (const auto &o : opts) {
    out.insert(o.relation.name() + "@" + std::string(to_string(o.anchor.kind)));
  }
  return out;
}

// The published matrix, row by row, as the set of licensed cells.
struct Row {
  bool perfect;
  S sem;
  std::set<std::string> yes;
  std::set<std::string> marginal;
};

const std::vector<Row> &rows() {
  static const std::vector<Row> r = {
      {false, S::kEvent, {"just_after@S1", "precede@S1", "same_event@S1"}, {}},
      {false, S::kActivity, {"just_after@S1"}, {}},
      {false, S::kState,
       {"just_after@TF1", "overlap@S1", "same_event@TF1"},
       {"precede@TF1"}},
      {true, S::kEvent, {"just_after@S1", "precede@S1", "same_event@S1"}, {}},
      {true, S::kActivity, {"just_after@S1"}, {}},
      {true, S::kState, {"just_after@TF1", "overlap@S1", "same_event@TF1"}, {}},
  };
  return r;
}

TEST(FeasibilityTableTest, StockFileHas32Cells) {
  EXPECT_EQ(table().cells().size(), 32u);
  int tf1 = 0;
  for (const auto &c : table().cells()) tf1 += c.anchor == AnchorKind::kTF1;
  EXPECT_EQ(tf1, 8);
}

TEST(FeasibilityTableTest, SimplePastEventMatchesPublishedRows) {
  for (const Row &row : rows()) {
    ClauseAnnotation s1 = row.perfect ? past_perfect("e1", row.sem)
                                      : past("e1", row.sem);
    auto ctx = context(s1, past("e0", S::kEvent));
    EXPECT_EQ(summary(feasible_simple_past_event(ctx, table(), false)), row.yes)
        << to_string(row.sem) << (row.perfect ? " perfect" : "");
    auto with_marginal = row.yes;
    with_marginal.insert(row.marginal.begin(), row.marginal.end());
    EXPECT_EQ(summary(feasible_simple_past_event(ctx, table(), true)),
              with_marginal);
  }
}

TEST(FeasibilityTableTest, TableCellsAgreeWithEngineCellForCell) {
  for (const auto &cell : table().cells()) {
    EXPECT_EQ(observe_cell(table(), cell), cell.allow) << describe_cell(cell);
  }
}

TEST(FeasibilityTableTest, NoOverlapForEventiveS1) {
  for (bool perfect : {false, true}) {
    for (S sem : {S::kEvent, S::kActivity}) {
      ClauseAnnotation s1 =
          perfect ? past_perfect("e1", sem) : past("e1", sem);
      for (bool marginal : {false, true}) {
        for (const auto &o : feasible_options(context(s1), past("e2", S::kEvent),
                                              table(), marginal)) {
          EXPECT_NE(o.relation, RelationNode(CoreRelation::kOverlap));
        }
      }
    }
  }
}

TEST(FeasibilityTableTest, StateWithoutFocusHasOnlyOverlap) {
  auto opts = feasible_simple_past_event(context(past("e1", S::kState)),
                                         table(), true);
  EXPECT_EQ(summary(opts), (std::set<std::string>{"overlap@S1"}));
}

FeasibilityTable parse_table(const std::string &text) {
  std::istringstream in(text);
  return FeasibilityTable::parse(in);
}

std::string stock_table_text() {
  std::ifstream in(testing::data_dir() / "table1.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(FeasibilityTableTest, RejectsMalformedTables) {
  std::string text = stock_table_text();
  EXPECT_NO_THROW(parse_table(text));
  // Missing cell.
  auto first_nl = text.find('\n', text.find("s1="));
  std::string missing = text;
  missing.erase(text.find("s1="), first_nl - text.find("s1=") + 1);
  EXPECT_THROW(parse_table(missing), InputError);
  // Duplicate cell.
  EXPECT_THROW(parse_table(text + "s1=past,event anchor=s1 rel=precede "
                                  "allow=yes\n"),
               InputError);
  EXPECT_THROW(parse_table("s1=past,event anchor=tf1 rel=precede allow=yes\n"),
               InputError);
  EXPECT_THROW(parse_table("s1=past,event anchor=s1 rel=precede allow=maybe\n"),
               InputError);
  EXPECT_THROW(parse_table("s1=present,event anchor=s1 rel=precede allow=yes\n"),
               InputError);
  EXPECT_THROW(parse_table("s1=past,event anchor=s1 rel=precede\n"),
               InputError);
  EXPECT_THROW(parse_table("s1=past,event anchor=s1 rel=precede allow=yes "
                           "color=red\n"),
               InputError);
}

TEST(FeasibleGeneralTest, PastPerfectEventAfterEventPrecedes) {
  auto opts = feasible_general(context(past("e1", S::kEvent)),
                               past_perfect("e2", S::kEvent));
  EXPECT_EQ(summary(opts), (std::set<std::string>{"precede@S1"}));
}

TEST(FeasibleGeneralTest, StateAfterStateOverlapsOrElaborates) {
  auto opts = feasible_general(context(past("e1", S::kState)),
                               past("e2", S::kState));
  EXPECT_EQ(summary(opts), (std::set<std::string>{"overlap@S1", "same_event@S1"}));
}

TEST(FeasibleGeneralTest, EventCannotElaborateState) {
  // Present-tense event: off the matrix path.
  auto e2 = testing::clause("e2", Tense::kPresent, SyntacticAspect::kSimple,
                            S::kEvent);
  auto opts = feasible_general(context(past("e1", S::kState)), e2);
  EXPECT_FALSE(summary(opts).count("same_event@S1"));
  EXPECT_TRUE(summary(opts).count("overlap@S1"));
}

TEST(FeasibleGeneralTest, StateAfterEvent) {
  auto opts = feasible_general(context(past("e1", S::kEvent)),
                               past("e2", S::kState));
  EXPECT_EQ(summary(opts), (std::set<std::string>{"overlap@S1", "just_after@S1",
                                                  "same_event@S1"}));
}

TEST(FeasibleGeneralTest, PastPerfectStateCanPrecede) {
  auto after_event = feasible_general(context(past("e1", S::kEvent)),
                                      past_perfect("e2", S::kState));
  EXPECT_TRUE(summary(after_event).count("precede@S1"));
  auto after_activity = feasible_general(context(past("e1", S::kActivity)),
                                         past_perfect("e2", S::kState));
  EXPECT_FALSE(summary(after_activity).count("precede@S1"));
  auto simple_state = feasible_general(context(past("e1", S::kEvent)),
                                       past("e2", S::kState));
  EXPECT_FALSE(summary(simple_state).count("precede@S1"));
}

TEST(FeasibleGeneralTest, JustAfterUsesFocusOfStativeS1) {
  auto opts = feasible_general(context(past("e1", S::kState), past("e0", S::kEvent)),
                               past("e2", S::kActivity));
  bool found = false;
  for (const auto &o : opts) {
    if (o.relation == RelationNode(CoreRelation::kJustAfter)) {
      EXPECT_EQ(o.anchor, (Anchor{"e0", AnchorKind::kTF1}));
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(FeasibleGeneralTest, TF1OnlyWhenS1Stative) {
  // Over every S1/S2 combination: TF1 anchors appear only for stative S1.
  for (S a : {S::kEvent, S::kState, S::kActivity}) {
    for (S b : {S::kEvent, S::kState, S::kActivity}) {
      for (bool p1 : {false, true}) {
        for (bool p2 : {false, true}) {
          auto s1 = p1 ? past_perfect("e1", a) : past("e1", a);
          auto s2 = p2 ? past_perfect("e2", b) : past("e2", b);
          for (const auto &o : feasible_options(
                   context(s1, past("e0", S::kEvent)), s2, table(), true)) {
            if (o.anchor.kind == AnchorKind::kTF1) {
              EXPECT_EQ(a, S::kState);
            }
          }
        }
      }
    }
  }
}

std::optional<CueMarker> cue(const char *token) {
  return stock_config().resources.cues.marker(token);
}

TEST(ApplyExplicitTest, CueRefinesAndFilters) {
  auto ctx = context(past("e1", S::kEvent));
  auto defaults = feasible_options(ctx, past("e2", S::kEvent), table(), false);
  auto r = apply_explicit(ctx, defaults, cue("because"), std::nullopt, lattice());
  ASSERT_EQ(r.options.size(), 1u);
  EXPECT_EQ(r.options[0].relation, RelationNode("cause"));
  EXPECT_EQ(r.options[0].source, OptionSource::kCue);
  EXPECT_FALSE(r.clash);
}

TEST(ApplyExplicitTest, TemporalExpressionAndCueClash) {
  auto ctx = context(past("e1", S::kEvent));
  TempExprDirective tx{CoreRelation::kPrecede, std::nullopt};
  auto r = apply_explicit(ctx, {}, cue("as_a_result"), tx, lattice());
  EXPECT_TRUE(r.options.empty());
  ASSERT_TRUE(r.clash);
  EXPECT_NE(r.clash->find("as_a_result"), std::string::npos);
  EXPECT_NE(r.clash->find("temprel=precede"), std::string::npos);
}

TEST(ApplyExplicitTest, ConsistentMarkersGiveTheMoreSpecificNode) {
  auto ctx = context(past("e1", S::kEvent));
  TempExprDirective tx{CoreRelation::kOverlap, std::nullopt};
  auto r = apply_explicit(ctx, {}, cue("meanwhile"), tx, lattice());
  ASSERT_EQ(r.options.size(), 1u);
  EXPECT_EQ(r.options[0].relation, RelationNode("background"));
  EXPECT_EQ(r.options[0].anchor, (Anchor{"e1", AnchorKind::kS1}));
}

TEST(ApplyExplicitTest, TemporalExpressionOverridesDefaults) {
  auto ctx = context(past("e1", S::kState));
  auto s2 = past("e2", S::kState);
  auto defaults = feasible_options(ctx, s2, table(), false);
  ASSERT_TRUE(summary(defaults).count("overlap@S1"));
  TempExprDirective tx{CoreRelation::kPrecede, std::nullopt};
  auto r = apply_explicit(ctx, defaults, std::nullopt, tx, lattice());
  EXPECT_EQ(summary(r.options), (std::set<std::string>{"precede@S1"}));
  EXPECT_EQ(r.options[0].source, OptionSource::kTempExpr);
}

TEST(ApplyExplicitTest, TemporalExpressionYieldsAtMostOneOption) {
  auto ctx = context(past("e1", S::kState), past("e0", S::kEvent));
  for (CoreRelation rel : kCoreRelations) {
    for (std::optional<std::string> anchor :
         {std::optional<std::string>{}, std::optional<std::string>{"tf"},
          std::optional<std::string>{"e0"}, std::optional<std::string>{"e9"}}) {
      auto r = apply_explicit(ctx, {}, std::nullopt,
                              TempExprDirective{rel, anchor}, lattice());
      EXPECT_LE(r.options.size(), 1u);
    }
  }
  auto tf = apply_explicit(ctx, {}, std::nullopt,
                           TempExprDirective{CoreRelation::kJustAfter, "tf"},
                           lattice());
  ASSERT_EQ(tf.options.size(), 1u);
  EXPECT_EQ(tf.options[0].anchor, (Anchor{"e0", AnchorKind::kTF1}));
  auto elsewhere = apply_explicit(
      ctx, {}, std::nullopt, TempExprDirective{CoreRelation::kPrecede, "e9"},
      lattice());
  EXPECT_TRUE(elsewhere.options.empty());
  EXPECT_FALSE(elsewhere.clash);
}

TEST(ApplyExplicitTest, FocusTokenWithoutFocusClashes) {
  auto ctx = context(past("e1", S::kState));
  auto r = apply_explicit(ctx, {}, std::nullopt,
                          TempExprDirective{CoreRelation::kJustAfter, "tf"},
                          lattice());
  EXPECT_TRUE(r.options.empty());
  EXPECT_TRUE(r.clash);
}

TEST(ApplyExplicitTest, IdentityWithoutMarkers) {
  auto ctx = context(past("e1", S::kEvent));
  auto defaults = feasible_options(ctx, past("e2", S::kEvent), table(), false);
  auto r = apply_explicit(ctx, defaults, std::nullopt, std::nullopt, lattice());
  EXPECT_EQ(r.options, defaults);
  auto top = apply_explicit(ctx, defaults, cue("and"), std::nullopt, lattice());
  EXPECT_EQ(top.options, defaults);
}

TEST(ApplyExplicitTest, CueAgainstEveryOptionClashes) {
  auto ctx = context(past("e1", S::kActivity));
  auto defaults = feasible_options(ctx, past("e2", S::kEvent), table(), false);
  auto r = apply_explicit(ctx, defaults, cue("because"), std::nullopt, lattice());
  EXPECT_TRUE(r.options.empty());
  ASSERT_TRUE(r.clash);
  EXPECT_NE(r.clash->find("because"), std::string::npos);
}

TEST(FlashbackTest, PerfectBeforeSimpleAnchor) {
  EXPECT_TRUE(is_flashback(past("e1", S::kEvent), past_perfect("e2", S::kEvent),
                           CoreRelation::kPrecede));
  EXPECT_FALSE(is_flashback(past_perfect("e1", S::kEvent),
                            past_perfect("e2", S::kEvent),
                            CoreRelation::kPrecede));
  EXPECT_FALSE(is_flashback(past("e1", S::kEvent), past("e2", S::kEvent),
                            CoreRelation::kPrecede));
  EXPECT_FALSE(is_flashback(past("e1", S::kEvent), past_perfect("e2", S::kState),
                            CoreRelation::kOverlap));
}

}  // namespace
}  // namespace tempora
