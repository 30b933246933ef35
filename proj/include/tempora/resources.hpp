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

#pragma once

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>

#include "tempora/centering.hpp"
#include "tempora/closeness_lexicon.hpp"
#include "tempora/constraint_engine.hpp"
#include "tempora/relation_lattice.hpp"

#ifndef TEMPORA_DEFAULT_DATA_DIR
#define TEMPORA_DEFAULT_DATA_DIR "data"
#endif

namespace tempora {

// Immutable linguistic data shared by every analysis.
struct Resources {
  Lattice lattice;
  CueLexicon cues;
  FeasibilityTable table;
  Lexicon lexicon;
};

struct AnalysisOptions {
  PreferenceWeights weights;
  bool allow_marginal = false;
  bool tier_prune = true;
};

struct Config {
  Resources resources;
  AnalysisOptions options;
};

// $TEMPORA_DATA if set, otherwise the directory configured at build time.
inline std::filesystem::path default_data_dir() {
  if (const char *env = std::getenv("TEMPORA_DATA"); env && *env) return env;
  return TEMPORA_DEFAULT_DATA_DIR;
}

// Optional replacements for individual data files.
struct DataPaths {
  std::optional<std::filesystem::path> lattice;
  std::optional<std::filesystem::path> cues;
  std::optional<std::filesystem::path> table;
  std::optional<std::filesystem::path> lexicon;
};

inline Resources load_resources(const std::filesystem::path &data_dir,
                                const DataPaths &overrides = {}) {
  Lattice lattice =
      Lattice::load(overrides.lattice.value_or(data_dir / "lattice.txt"));
  CueLexicon cues =
      CueLexicon::load(overrides.cues.value_or(data_dir / "cues.txt"), lattice);
  FeasibilityTable table =
      FeasibilityTable::load(overrides.table.value_or(data_dir / "table1.txt"));
  Lexicon lexicon =
      Lexicon::load(overrides.lexicon.value_or(data_dir / "lexicon.tsv"));
  return Resources{std::move(lattice), std::move(cues), std::move(table),
                   std::move(lexicon)};
}

inline Config load_config(const std::filesystem::path &data_dir,
                          AnalysisOptions options = {},
                          const DataPaths &overrides = {}) {
  options.weights.validate();
  return Config{load_resources(data_dir, overrides), std::move(options)};
}

}  // namespace tempora
