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

// Command-line front end.
//
//   tempora analyze -i FILE [--mode best|enumerate|underspec]
//                   [--format text|json|dot] [--log]
//   tempora oracle -i FILE
//   tempora conformance [--examples DIR]
//
// Every subcommand accepts the data-file and weight options. Exit codes: 0
// success, 1 input or usage error, 2 no consistent reading, 3 conformance
// failures.

#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tempora/builder.hpp"
#include "tempora/conformance.hpp"
#include "tempora/discourse_io.hpp"
#include "tempora/oracle.hpp"
#include "tempora/render.hpp"
#include "tempora/resources.hpp"

namespace tempora::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInconsistent = 2;
inline constexpr int kExitConformance = 3;

struct Settings {
  std::string input;
  std::string data_dir;
  std::string lexicon, table, lattice, cues;
  std::string examples;
  std::string mode = "best";
  std::string format = "text";
  bool log = false;
  AnalysisOptions options;
};

namespace internal {

inline void add_data_options(CLI::App *cmd, Settings &s) {
  cmd->add_option("--data", s.data_dir,
                  "Data directory (default $TEMPORA_DATA or the built-in one)");
  cmd->add_option("--lexicon", s.lexicon, "Closeness lexicon (TSV)");
  cmd->add_option("--table", s.table, "Feasibility matrix");
  cmd->add_option("--lattice", s.lattice, "Relation lattice");
  cmd->add_option("--cues", s.cues, "Cue lexicon");
  cmd->add_option("--w-tense", s.options.weights.w_tense,
                  "Weight of parallel tense");
  cmd->add_option("--w-sem", s.options.weights.w_sem,
                  "Weight of semantic closeness");
  cmd->add_option("--w-cur", s.options.weights.w_cur,
                  "Weight of staying on the current thread");
  cmd->add_option("--w-new", s.options.weights.w_new,
                  "Rating of opening a flashback thread");
  cmd->add_flag("--allow-marginal", s.options.allow_marginal,
                "Admit marginal matrix cells");
  cmd->add_flag("!--no-tier-prune", s.options.tier_prune,
                "Keep dispreferred relation tiers");
}

inline Config make_config(const Settings &s) {
  DataPaths paths;
  if (!s.lexicon.empty()) paths.lexicon = s.lexicon;
  if (!s.table.empty()) paths.table = s.table;
  if (!s.lattice.empty()) paths.lattice = s.lattice;
  if (!s.cues.empty()) paths.cues = s.cues;
  std::filesystem::path dir =
      s.data_dir.empty() ? default_data_dir() : std::filesystem::path(s.data_dir);
  return load_config(dir, s.options, paths);
}

inline std::vector<ClauseAnnotation> read_input(const Settings &s) {
  return load_discourse_file(s.input).clauses;
}

inline int cmd_analyze(const Settings &s, std::ostream &out,
                       std::ostream &err) {
  Config cfg = make_config(s);
  for (const auto &w : cfg.resources.lexicon.warnings()) {
    err << "warning: " << w << "\n";
  }
  auto mode = parse_mode(s.mode);
  auto format = parse_format(s.format);
  if (!mode) throw InputError("unknown mode '" + s.mode + "'");
  if (!format) throw InputError("unknown format '" + s.format + "'");
  AnalysisResult result = analyze(read_input(s), cfg, *mode);
  for (const auto &w : result.warnings) err << "warning: " << w << "\n";
  switch (*format) {
    case Format::kText: out << render_text(result, s.log); break;
    case Format::kJson: out << render_json(result, s.log); break;
    case Format::kDot: out << render_dot(result); break;
  }
  return kExitOk;
}

inline int cmd_oracle(const Settings &s, std::ostream &out) {
  Config cfg = make_config(s);
  auto discourse = read_input(s);
  if (discourse.empty()) throw InputError("empty discourse");
  auto report = oracle::run_oracle(discourse, cfg);
  out << "unconstrained: " << report.unconstrained << "\n";
  out << "constrained: " << report.constrained.size()
      << (cfg.options.tier_prune ? "" : " (tier pruning off)") << "\n";
  out << "preferred: " << report.preferred << "\n";
  out << "builder agrees: " << (report.builder_agrees ? "yes" : "no") << "\n";
  for (const auto &r : report.constrained) {
    out << "  " << oracle::format_reading(r) << "\n";
  }
  if (!cfg.options.tier_prune) {
    out << "tier-1 delta: " << report.tier_delta.size()
        << " reading(s) removed by tier pruning\n";
    for (const auto &r : report.tier_delta) {
      out << "  " << oracle::format_reading(r) << "\n";
    }
  }
  return kExitOk;
}

inline int cmd_conformance(const Settings &s, std::ostream &out) {
  Config cfg = make_config(s);
  int failures = 0;
  auto cells = check_table(cfg.resources.table);
  int passed = 0;
  for (const auto &c : cells) {
    out << (c.pass ? "PASS " : "FAIL ") << describe_cell(c.expected)
        << " expected=" << to_string(c.expected.allow)
        << " observed=" << to_string(c.observed) << "\n";
    passed += c.pass;
  }
  failures += static_cast<int>(cells.size()) - passed;
  out << "cells: " << passed << "/" << cells.size() << " pass\n";

  std::filesystem::path dir =
      s.examples.empty()
          ? (s.data_dir.empty() ? default_data_dir()
                                : std::filesystem::path(s.data_dir)) /
                "examples"
          : std::filesystem::path(s.examples);
  auto examples = check_examples(dir, cfg);
  int ex_passed = 0;
  for (const auto &e : examples) {
    out << (e.pass() ? "PASS " : "FAIL ") << e.name << " (" << e.checked
        << " checks)\n";
    for (const auto &f : e.failures) out << "  " << f << "\n";
    ex_passed += e.pass();
  }
  failures += static_cast<int>(examples.size()) - ex_passed;
  out << "examples: " << ex_passed << "/" << examples.size() << " pass\n";
  return failures == 0 ? kExitOk : kExitConformance;
}

}  // namespace internal

// Runs the tool on `args` (without the program name).
inline int run(const std::vector<std::string> &args, std::ostream &out,
               std::ostream &err) {
  CLI::App app{"Temporal and rhetorical structure of annotated discourse",
               "tempora"};
  app.require_subcommand(1);
  Settings s;

  auto *analyze_cmd = app.add_subcommand("analyze", "Analyze a discourse");
  analyze_cmd->add_option("-i,--input", s.input, "Discourse file")->required();
  analyze_cmd->add_option("--mode", s.mode, "best|enumerate|underspec")
      ->check(CLI::IsMember({"best", "enumerate", "underspec"}));
  analyze_cmd->add_option("--format", s.format, "text|json|dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  analyze_cmd->add_flag("--log", s.log, "Include the rule log");
  internal::add_data_options(analyze_cmd, s);

  auto *oracle_cmd =
      app.add_subcommand("oracle", "Brute-force reading counts for a discourse");
  oracle_cmd->add_option("-i,--input", s.input, "Discourse file")->required();
  internal::add_data_options(oracle_cmd, s);

  auto *conf_cmd = app.add_subcommand(
      "conformance", "Check the feasibility matrix and the bundled examples");
  conf_cmd->add_option("--examples", s.examples, "Directory of .disc files");
  internal::add_data_options(conf_cmd, s);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*analyze_cmd) return internal::cmd_analyze(s, out, err);
    if (*oracle_cmd) return internal::cmd_oracle(s, out);
    return internal::cmd_conformance(s, out);
  } catch (const ParseFailure &e) {
    err << "error: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const InputError &e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::filesystem::filesystem_error &e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace tempora::cli
