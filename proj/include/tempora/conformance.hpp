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

// Replays the simple-past-event feasibility matrix and the bundled example
// discourses against the engine.
//
// Example files state their expected outcomes in comments:
//
//   # expect top e2 precede e1; e3 just_after e1
//   # expect best-count 2
//   # expect unique
//   # expect fail
//   # expect node e2 cause
//   # expect thread e3 T1
//   # expect action e3 flashback
//   # expect option e3 same_event      (some constrained reading has it)
//   # expect no-option e2 same_event
//   # expect oracle 17 4 2

#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "tempora/builder.hpp"
#include "tempora/constraint_engine.hpp"
#include "tempora/discourse_io.hpp"
#include "tempora/oracle.hpp"
#include "tempora/render.hpp"
#include "tempora/resources.hpp"

namespace tempora {

// The matrix as published, independent of the table file.
inline const std::array<FeasibilityTable::Cell, FeasibilityTable::kCellCount> &
reference_table() {
  using G = TenseGroup;
  using S = SemanticAspect;
  using K = AnchorKind;
  using R = CoreRelation;
  using A = Allowance;
  static const std::array<FeasibilityTable::Cell, FeasibilityTable::kCellCount>
      cells = {{
          {G::kPast, S::kEvent, K::kS1, R::kJustAfter, A::kYes},
          {G::kPast, S::kEvent, K::kS1, R::kPrecede, A::kYes},
          {G::kPast, S::kEvent, K::kS1, R::kOverlap, A::kNo},
          {G::kPast, S::kEvent, K::kS1, R::kSameEvent, A::kYes},
          {G::kPast, S::kActivity, K::kS1, R::kJustAfter, A::kYes},
          {G::kPast, S::kActivity, K::kS1, R::kPrecede, A::kNo},
          {G::kPast, S::kActivity, K::kS1, R::kOverlap, A::kNo},
          {G::kPast, S::kActivity, K::kS1, R::kSameEvent, A::kNo},
          {G::kPast, S::kState, K::kS1, R::kJustAfter, A::kNo},
          {G::kPast, S::kState, K::kTF1, R::kJustAfter, A::kYes},
          {G::kPast, S::kState, K::kS1, R::kPrecede, A::kNo},
          {G::kPast, S::kState, K::kTF1, R::kPrecede, A::kMarginal},
          {G::kPast, S::kState, K::kS1, R::kOverlap, A::kYes},
          {G::kPast, S::kState, K::kTF1, R::kOverlap, A::kNo},
          {G::kPast, S::kState, K::kS1, R::kSameEvent, A::kNo},
          {G::kPast, S::kState, K::kTF1, R::kSameEvent, A::kYes},
          {G::kPastPerfect, S::kEvent, K::kS1, R::kJustAfter, A::kYes},
          {G::kPastPerfect, S::kEvent, K::kS1, R::kPrecede, A::kYes},
          {G::kPastPerfect, S::kEvent, K::kS1, R::kOverlap, A::kNo},
          {G::kPastPerfect, S::kEvent, K::kS1, R::kSameEvent, A::kYes},
          {G::kPastPerfect, S::kActivity, K::kS1, R::kJustAfter, A::kYes},
          {G::kPastPerfect, S::kActivity, K::kS1, R::kPrecede, A::kNo},
          {G::kPastPerfect, S::kActivity, K::kS1, R::kOverlap, A::kNo},
          {G::kPastPerfect, S::kActivity, K::kS1, R::kSameEvent, A::kNo},
          {G::kPastPerfect, S::kState, K::kS1, R::kJustAfter, A::kNo},
          {G::kPastPerfect, S::kState, K::kTF1, R::kJustAfter, A::kYes},
          {G::kPastPerfect, S::kState, K::kS1, R::kPrecede, A::kNo},
          {G::kPastPerfect, S::kState, K::kTF1, R::kPrecede, A::kNo},
          {G::kPastPerfect, S::kState, K::kS1, R::kOverlap, A::kYes},
          {G::kPastPerfect, S::kState, K::kTF1, R::kOverlap, A::kNo},
          {G::kPastPerfect, S::kState, K::kS1, R::kSameEvent, A::kNo},
          {G::kPastPerfect, S::kState, K::kTF1, R::kSameEvent, A::kYes},
      }};
  return cells;
}

struct CellCheck {
  FeasibilityTable::Cell expected;
  Allowance observed = Allowance::kNo;
  bool pass = false;
};

inline std::string describe_cell(const FeasibilityTable::Cell &c) {
  return std::string(to_string(c.group)) + " " +
         std::string(to_string(c.sem)) + " " +
         std::string(to_string(c.relation)) + "@" +
         std::string(to_string(c.anchor));
}

// What the engine emits for one matrix row: yes if emitted by default,
// marginal if only emitted when marginal cells are allowed, no otherwise.
inline Allowance observe_cell(const FeasibilityTable &table,
                              const FeasibilityTable::Cell &cell) {
  AttachmentContext ctx;
  ctx.s1.id = "s1";
  ctx.s1.tense = Tense::kPast;
  ctx.s1.syn_aspect = cell.group == TenseGroup::kPast
                          ? SyntacticAspect::kSimple
                          : SyntacticAspect::kPerfect;
  ctx.s1.sem_aspect = cell.sem;
  ClauseAnnotation focus;
  focus.id = "tf1";
  focus.sem_aspect = SemanticAspect::kEvent;
  ctx.tempfoc = focus;
  ctx.thread_members = {"tf1", "s1"};
  ClauseAnnotation s2;
  s2.id = "s2";
  auto emitted = [&](bool allow_marginal) {
    auto opts = feasible_options(ctx, s2, table, allow_marginal);
    return std::any_of(opts.begin(), opts.end(),
                       [&](const AttachmentOption &o) {
                         return o.anchor.kind == cell.anchor &&
                                o.relation == RelationNode(cell.relation);
                       });
  };
  if (emitted(false)) return Allowance::kYes;
  if (emitted(true)) return Allowance::kMarginal;
  return Allowance::kNo;
}

inline std::vector<CellCheck> check_table(const FeasibilityTable &table) {
  std::vector<CellCheck> out;
  for (const auto &cell : reference_table()) {
    CellCheck c{cell, observe_cell(table, cell), false};
    c.pass = c.observed == cell.allow;
    out.push_back(c);
  }
  return out;
}

struct ExampleCheck {
  std::string name;
  std::vector<std::string> failures;
  int checked = 0;
  bool pass() const { return failures.empty() && checked > 0; }
};

namespace internal {

inline std::vector<std::string> split_ws(const std::string &s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

inline std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace internal

inline ExampleCheck check_example(const std::string &name,
                                  const DiscourseFile &file,
                                  const Config &cfg) {
  ExampleCheck check{name, {}, 0};
  std::optional<AnalysisResult> best, all;
  std::optional<std::string> failure;
  try {
    best = analyze(file.clauses, cfg, Mode::kBest);
    all = analyze(file.clauses, cfg, Mode::kEnumerate);
  } catch (const ParseFailure &e) {
    failure = e.what();
  } catch (const InputError &e) {
    check.failures.push_back(std::string("input error: ") + e.what());
    return check;
  }
  auto fail = [&](const std::string &directive, const std::string &why) {
    check.failures.push_back("expect " + directive + ": " + why);
  };
  auto top_dcu = [&](const std::string &id) -> const Dcu * {
    return best ? best->readings.front().find(id) : nullptr;
  };

  for (const std::string &directive : file.directives) {
    ++check.checked;
    auto words = internal::split_ws(directive);
    if (words.empty()) {
      fail(directive, "empty directive");
      continue;
    }
    const std::string &kind = words[0];
    if (kind == "fail") {
      if (!failure) fail(directive, "analysis succeeded");
      continue;
    }
    if (failure) {
      fail(directive, "analysis failed: " + *failure);
      continue;
    }
    if (kind == "top") {
      std::vector<std::string> want;
      std::istringstream rest(directive.substr(3));
      std::string item;
      while (std::getline(rest, item, ';')) {
        if (auto t = internal::trim(item); !t.empty()) want.push_back(t);
      }
      std::vector<std::string> got;
      for (const auto &r : eventuality_order(best->readings.front())) {
        got.push_back(format_relation(r));
      }
      if (got != want) fail(directive, "got " + internal::join_ids(got, "; "));
    } else if (kind == "best-count" && words.size() == 2) {
      auto n = std::to_string(best->readings.size());
      if (n != words[1]) fail(directive, "got " + n);
    } else if (kind == "unique" && words.size() == 1) {
      if (best->readings.size() != 1) {
        fail(directive, "got " + std::to_string(best->readings.size()));
      }
    } else if (kind == "node" && words.size() == 3) {
      const Dcu *d = top_dcu(words[1]);
      std::string got = d && d->rhet_reln ? d->rhet_reln->name() : "-";
      if (got != words[2]) fail(directive, "got " + got);
    } else if (kind == "thread" && words.size() == 3) {
      const Dcu *d = top_dcu(words[1]);
      std::string got = d ? thread_name(d->thread) : "-";
      if (got != words[2]) fail(directive, "got " + got);
    } else if (kind == "action" && words.size() == 3) {
      const Dcu *d = top_dcu(words[1]);
      std::string got = d ? std::string(to_string(d->action)) : "-";
      if (got != words[2]) fail(directive, "got " + got);
    } else if ((kind == "option" || kind == "no-option") && words.size() == 3) {
      bool found = false;
      for (const auto &s : all->readings) {
        const Dcu *d = s.find(words[1]);
        if (!d) continue;
        for (const auto &r : d->temp_relns) {
          found = found || to_string(r.relation) == words[2];
        }
      }
      if (found != (kind == "option")) {
        fail(directive, found ? "present" : "absent");
      }
    } else if (kind == "oracle" && words.size() == 4) {
      auto report = oracle::run_oracle(file.clauses, cfg);
      std::string got = std::to_string(report.unconstrained) + " " +
                        std::to_string(report.constrained.size()) + " " +
                        std::to_string(report.preferred);
      if (got != words[1] + " " + words[2] + " " + words[3]) {
        fail(directive, "got " + got);
      }
    } else {
      fail(directive, "unknown directive");
    }
  }
  if (check.checked == 0) check.failures.push_back("no expectations");
  return check;
}

inline std::vector<ExampleCheck> check_examples(
    const std::filesystem::path &dir, const Config &cfg) {
  std::vector<std::filesystem::path> files;
  for (const auto &entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".disc") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<ExampleCheck> out;
  for (const auto &p : files) {
    out.push_back(
        check_example(p.stem().string(), load_discourse_file(p), cfg));
  }
  return out;
}

}  // namespace tempora
