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

#include <gtest/gtest.h>

#include "test_util.h"

namespace tempora {
namespace {

using oracle::enumerate_unconstrained;
using oracle::filter_constrained;
using testing::example;
using testing::past;
using testing::stock_config;
using S = SemanticAspect;

std::vector<ClauseAnnotation> events(int n) {
  std::vector<ClauseAnnotation> d;
  for (int i = 1; i <= n; ++i) d.push_back(past("e" + std::to_string(i), S::kEvent));
  return d;
}

std::size_t pow4(std::size_t k) {
  std::size_t r = 1;
  while (k--) r *= 4;
  return r;
}

TEST(UnconstrainedTest, Counts) {
  EXPECT_TRUE(enumerate_unconstrained(std::vector<ClauseAnnotation>{}).empty());
  for (int n = 1; n <= 5; ++n) {
    auto d = events(n);
    std::size_t expected = pow4(n - 1) + (n >= 3 ? 1 : 0);
    EXPECT_EQ(enumerate_unconstrained(d).size(), expected) << n;
  }
  EXPECT_EQ(enumerate_unconstrained(example("vvg_a")).size(), 17u);
}

TEST(UnconstrainedTest, SortedAndUnique) {
  auto r = enumerate_unconstrained(events(4));
  for (std::size_t i = 1; i < r.size(); ++i) EXPECT_LT(r[i - 1], r[i]);
}

TEST(FilterTest, IdentityWithoutConstraints) {
  auto d = example("vvg_a");
  auto all = enumerate_unconstrained(d);
  oracle::FilterOptions off;
  off.apply_constraints = false;
  EXPECT_EQ(filter_constrained(all, d, stock_config(), off), all);
}

TEST(FilterTest, BecauseLeavesOneReading) {
  auto d = example("j1");
  auto r = filter_constrained(enumerate_unconstrained(d), d, stock_config());
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(oracle::format_reading(r[0]), "e2 cause@e1");
}

TEST(FilterTest, VvgCounts) {
  auto d = example("vvg_a");
  EXPECT_EQ(filter_constrained(enumerate_unconstrained(d), d, stock_config())
                .size(),
            4u);
  AnalysisOptions opts;
  opts.tier_prune = false;
  EXPECT_EQ(filter_constrained(enumerate_unconstrained(d), d,
                               testing::config_with(opts))
                .size(),
            6u);
}

TEST(FilterTest, FilteredIsSubsetOfRealizedSkeletons) {
  auto d = example("vvg_b");
  auto all = enumerate_unconstrained(d);
  const Lattice &l = stock_config().resources.lattice;
  for (const auto &r : filter_constrained(all, d, stock_config())) {
    bool matched = false;
    for (const auto &skel : all) {
      bool ok = skel.size() == r.size();
      for (std::size_t i = 0; ok && i < r.size(); ++i) {
        if (skel[i].action == ThreadAction::kNewThread) {
          ok = r[i].action == ThreadAction::kNewThread;
        } else if (skel[i].relation) {
          ok = r[i].relation &&
               l.leq(*r[i].relation, *skel[i].relation);
        }
      }
      matched = matched || ok;
    }
    EXPECT_TRUE(matched) << oracle::format_reading(r);
  }
}

TEST(RunOracleTest, Reports) {
  auto vvg = oracle::run_oracle(example("vvg_a"), stock_config());
  EXPECT_EQ(vvg.unconstrained, 17u);
  EXPECT_EQ(vvg.constrained.size(), 4u);
  EXPECT_EQ(vvg.preferred, 2u);
  EXPECT_TRUE(vvg.builder_agrees);
  EXPECT_TRUE(vvg.tier_delta.empty());

  AnalysisOptions opts;
  opts.tier_prune = false;
  auto loose = oracle::run_oracle(example("vvg_a"), testing::config_with(opts));
  EXPECT_EQ(loose.constrained.size(), 6u);
  EXPECT_EQ(loose.preferred, 3u);
  EXPECT_EQ(loose.tier_delta.size(), 2u);
  EXPECT_TRUE(loose.builder_agrees);

  auto pp = load_discourse_file(testing::data_dir() / "samples" / "pp.disc");
  auto r = oracle::run_oracle(pp.clauses, stock_config());
  EXPECT_EQ(r.unconstrained, 4u);
  EXPECT_EQ(r.constrained.size(), 1u);
  EXPECT_EQ(r.preferred, 1u);

  auto single = oracle::run_oracle(events(1), stock_config());
  EXPECT_EQ(single.unconstrained, 1u);
  EXPECT_EQ(single.constrained.size(), 1u);
  EXPECT_TRUE(single.builder_agrees);
}

TEST(RunOracleTest, ClashHasNoReadings) {
  auto d = load_discourse_file(testing::data_dir() / "samples" / "ruled.disc");
  auto r = oracle::run_oracle(d.clauses, stock_config());
  EXPECT_TRUE(r.constrained.empty());
  EXPECT_EQ(r.preferred, 0u);
  EXPECT_TRUE(r.builder_agrees);
}

// Adding a cue to one clause never yields more constrained readings.
TEST(MonotonicityTest, AddingACueNeverAddsReadings) {
  const Config &cfg = stock_config();
  for (const auto &d : testing::alphabet_discourses(3)) {
    if (d.size() < 2) continue;
    for (std::size_t i = 1; i < d.size(); ++i) {
      if (d[i].cue) continue;
      auto base = filter_constrained(enumerate_unconstrained(d), d, cfg).size();
      for (const char *cue : {"because", "as_a_result", "meanwhile", "then",
                              "and"}) {
        auto cued = d;
        cued[i].cue = cue;
        auto n = filter_constrained(enumerate_unconstrained(cued), cued, cfg)
                     .size();
        EXPECT_LE(n, base) << render_discourse(cued);
      }
    }
  }
}

TEST(EquivalenceTest, BuilderMatchesOracleOnShortDiscourses) {
  const Config &cfg = stock_config();
  for (const auto &d : testing::alphabet_discourses(3)) {
    auto r = oracle::run_oracle(d, cfg);
    EXPECT_TRUE(r.builder_agrees) << render_discourse(d);
  }
}

}  // namespace
}  // namespace tempora
